#include "lmm/io.hpp"

#include <charconv>

namespace lmm {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return {buf, res.ptr};
}

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Convergent:
        return "CONVERGENT";
    case Verdict::Suspect:
        return "SUSPECT";
    case Verdict::Divergent:
        return "DIVERGENT";
    }
    return "?";
}

void write_terminal_sample_csv(std::ostream& os, const TerminalSample& sample) {
    os << "path";
    for (int n = 1; n <= sample.rate_count(); ++n)
        os << ",F_" << n;
    os << "\n";
    for (std::int64_t p = 0; p < sample.path_count(); ++p) {
        os << p;
        for (int n = 1; n <= sample.rate_count(); ++n)
            os << "," << format_double(sample.rate(p, n));
        os << "\n";
    }
}

void write_scan_csv(std::ostream& os, const MomentScanReport& report) {
    os << "v,estimate,std_error,max_share,n_eff,verdict\n";
    for (const ScanPoint& point : report.points) {
        const MomentEstimate& e = point.estimate;
        os << format_double(e.v) << "," << format_double(e.estimate) << ","
           << format_double(e.std_error) << "," << format_double(e.max_contribution_share)
           << "," << format_double(e.n_effective) << "," << verdict_name(point.verdict)
           << "\n";
    }
}

void write_tail_csv(std::ostream& os, const TailFitReport& report) {
    os << "slope,intercept,r2,q_lo,q_hi\n";
    os << format_double(report.slope) << "," << format_double(report.intercept) << ","
       << format_double(report.r_squared) << "," << format_double(report.quantile_lo) << ","
       << format_double(report.quantile_hi) << "\n";
}

void write_scan_text(std::ostream& os, const MomentScanReport& report) {
    os << "critical exponent bracket: [" << format_double(report.bracket_lo) << ", "
       << format_double(report.bracket_hi) << "]\n";
    os << "bracket width: " << format_double(report.bracket_hi - report.bracket_lo) << "\n";
    os << "tail divergence threshold: " << format_double(report.divergence_threshold) << "\n";
    os << "theoretical value 1/(2 int sigma^2): " << format_double(report.theoretical) << "\n";
    const bool contained = report.bracket_contains(report.theoretical);
    os << "verdict: theoretical value " << (contained ? "CONTAINED in" : "OUTSIDE")
       << " bracket\n";
    if (report.smoothed)
        os << "note: raw verdicts violated monotonicity and were smoothed\n";
}

} // namespace lmm
