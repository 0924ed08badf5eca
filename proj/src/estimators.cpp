#include "lmm/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lmm/errors.hpp"
#include "lmm/math.hpp"

namespace lmm {

namespace {

// log(phi) caps here; anything above overflows exp() and counts as saturation
constexpr double kExpOverflow = 709.0;

struct LogWeightedMoment {
    double estimate;
    double rel_std_error;
    double share;
    std::int64_t saturated;
};

// Core accumulation for sum(w exp(v log^2 x)) / sum(w) over a prefix, carried
// out on s_i = v log^2 x_i + log w_i with the max subtracted before
// exponentiating.  With that scaling the largest term is exactly 1, so the
// max contribution share is 1/sum(exp(s_i - s_max)).
LogWeightedMoment moment_over_prefix(std::span<const double> y, std::span<const double> logw,
                                     std::span<const double> w, double v, std::size_t n) {
    double smax = -std::numeric_limits<double>::infinity();
    std::int64_t saturated = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double vy = v * y[i];
        if (vy > kExpOverflow)
            ++saturated;
        const double s = logw.empty() ? vy : vy + logw[i];
        smax = std::max(smax, s);
    }

    NeumaierSum scaled; // sum exp(s_i - smax)
    NeumaierSum sw;     // sum w_i
    for (std::size_t i = 0; i < n; ++i) {
        const double vy = v * y[i];
        const double s = logw.empty() ? vy : vy + logw[i];
        scaled.add(std::exp(s - smax));
        sw.add(w.empty() ? 1.0 : w[i]);
    }
    const double t1 = scaled.value();
    const double s0 = sw.value();
    const double ratio = std::exp(smax + std::log(t1) - std::log(s0));

    // delta-method SE of the ratio, in the same scaling
    NeumaierSum sq;
    const double scaled_ratio = t1 / s0;
    for (std::size_t i = 0; i < n; ++i) {
        const double vy = v * y[i];
        const double s = logw.empty() ? vy : vy + logw[i];
        const double r = std::exp(s - smax) - scaled_ratio * (w.empty() ? 1.0 : w[i]);
        sq.add(r * r);
    }
    const double corr = (n > 1) ? static_cast<double>(n) / (static_cast<double>(n) - 1.0) : 1.0;
    // rel SE from the scaled sums directly; SE itself may overflow where the
    // estimate is near the double range, the ratio never does
    const double rel = (sq.value() > 0.0) ? std::sqrt(corr * sq.value()) / t1 : 0.0;
    return {ratio, rel, 1.0 / t1, saturated};
}

double kish_effective_size(std::span<const double> w, std::size_t n) {
    if (w.empty())
        return static_cast<double>(n);
    NeumaierSum s1, s2;
    for (std::size_t i = 0; i < n; ++i) {
        s1.add(w[i]);
        s2.add(w[i] * w[i]);
    }
    return s1.value() * s1.value() / s2.value();
}

void check_sample_arrays(std::span<const double> samples, std::span<const double> weights) {
    if (samples.empty())
        throw DomainError("moment estimate: empty sample");
    if (!weights.empty() && weights.size() != samples.size())
        throw DomainError("moment estimate: " + std::to_string(samples.size()) +
                          " samples vs " + std::to_string(weights.size()) + " weights");
}

std::vector<double> log_squares(std::span<const double> samples) {
    std::vector<double> y(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!(samples[i] > 0.0))
            throw DomainError("moment estimate: samples must be positive");
        const double l = std::log(samples[i]);
        y[i] = l * l;
    }
    return y;
}

std::vector<double> log_weights(std::span<const double> weights) {
    std::vector<double> lw(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] > 0.0))
            throw DomainError("moment estimate: weights must be positive");
        lw[i] = std::log(weights[i]);
    }
    return lw;
}

MomentEstimate estimate_from_logs(std::span<const double> y, std::span<const double> lw,
                                  std::span<const double> w, double v, std::size_t n) {
    MomentEstimate e;
    e.v = v;
    e.n_effective = kish_effective_size(w, n);
    if (v == 0.0) {
        // integrand identically 1: the normalized mean is 1 by construction
        e.estimate = 1.0;
        e.std_error = 0.0;
        double wmax = 0.0;
        NeumaierSum sw;
        for (std::size_t i = 0; i < n; ++i) {
            const double wi = w.empty() ? 1.0 : w[i];
            wmax = std::max(wmax, wi);
            sw.add(wi);
        }
        e.max_contribution_share = wmax / sw.value();
        return e;
    }
    const LogWeightedMoment r = moment_over_prefix(y, lw, w, v, n);
    e.estimate = r.estimate;
    e.std_error = r.rel_std_error * r.estimate;
    e.max_contribution_share = r.share;
    e.saturated_paths = r.saturated;
    return e;
}

} // namespace

bool MomentEstimate::saturated() const {
    return saturated_paths > 0 || !std::isfinite(estimate);
}

MomentEstimate estimate_logsquare_moment(std::span<const double> samples,
                                         std::span<const double> weights, double v) {
    check_sample_arrays(samples, weights);
    const std::vector<double> y = log_squares(samples);
    const std::vector<double> lw = log_weights(weights);
    return estimate_from_logs(y, lw, weights, v, samples.size());
}

namespace {

// Boundary estimate sup{v : E[e^{v log^2 X}] < inf} from the tail of
// y = log^2 x: the reciprocal mean excess of y over its (n-k)th order
// statistic.  Bounded Radon-Nikodym weights cannot move this boundary
// (the measure-change argument), so the tail is always read unweighted.
double tail_boundary_estimate(std::vector<double> y, std::int64_t* k_out) {
    const std::int64_t n = static_cast<std::int64_t>(y.size());
    const std::int64_t k = std::clamp<std::int64_t>(n / 1000, 100, 1000);
    if (k_out)
        *k_out = k;
    if (k + 1 > n)
        throw DomainError("scan: too few paths for a tail boundary estimate");
    std::nth_element(y.begin(), y.end() - (k + 1), y.end());
    const double u = y[static_cast<std::size_t>(n - k - 1)];
    NeumaierSum excess;
    for (std::int64_t i = n - k; i < n; ++i)
        excess.add(y[static_cast<std::size_t>(i)] - u);
    return static_cast<double>(k) / excess.value();
}

} // namespace

MomentScanReport scan_critical_exponent(const SampleSource& source,
                                        std::span<const double> v_grid,
                                        const ScanThresholds& thresholds,
                                        std::int64_t n_paths, double theoretical) {
    if (v_grid.size() < 2)
        throw BracketError("scan: grid needs at least two points to bracket; extend the grid");
    for (std::size_t i = 0; i < v_grid.size(); ++i) {
        if (!(v_grid[i] > 0.0) || (i > 0 && !(v_grid[i] > v_grid[i - 1])))
            throw DomainError("scan: v grid must be positive and strictly ascending");
    }
    if (n_paths < 4)
        throw DomainError("scan: need at least 4 paths");

    const WeightedSample ws = source(n_paths);
    if (static_cast<std::int64_t>(ws.values.size()) != n_paths ||
        (!ws.weights.empty() &&
         static_cast<std::int64_t>(ws.weights.size()) != n_paths))
        throw DomainError("scan: sample source returned a wrong-sized batch");
    const std::vector<double> y = log_squares(ws.values);
    const std::vector<double> lw = log_weights(ws.weights);

    std::int64_t tail_k = 0;
    const double vstar = tail_boundary_estimate(y, &tail_k);
    // safety margin ~1.2 tail standard errors; calibrated on the exact
    // log-normal oracle so that false divergence below the boundary is rare
    const double v_divergent = vstar * (1.0 + 1.2 / std::sqrt(static_cast<double>(tail_k)));

    // nested prefix ladder n/16, n/8, n/4, n/2, n
    std::vector<std::size_t> levels;
    for (int shift = 4; shift >= 0; --shift) {
        const auto lv = static_cast<std::size_t>(n_paths >> shift);
        if (lv >= 2 && (levels.empty() || lv > levels.back()))
            levels.push_back(lv);
    }

    MomentScanReport report;
    report.theoretical = theoretical;
    report.divergence_threshold = v_divergent;
    const double max_step = std::log1p(thresholds.max_doubling_drift);

    std::vector<Verdict> raw;
    for (double v : v_grid) {
        ScanPoint point;
        point.estimate = estimate_from_logs(y, lw, ws.weights, v, ws.values.size());
        point.half_estimate =
            estimate_from_logs(y, lw, ws.weights, v, ws.values.size() / 2);

        Verdict verdict;
        if (point.estimate.saturated() || v > v_divergent) {
            verdict = Verdict::Divergent;
        } else {
            bool stable = true;
            double prev = 0.0;
            for (std::size_t li = 0; li < levels.size() && stable; ++li) {
                const double est =
                    estimate_from_logs(y, lw, ws.weights, v, levels[li]).estimate;
                if (li > 0 && std::abs(std::log(est) - std::log(prev)) >= max_step)
                    stable = false;
                prev = est;
            }
            const bool convergent =
                stable &&
                point.estimate.std_error <
                    thresholds.max_rel_std_error * point.estimate.estimate &&
                point.estimate.max_contribution_share < thresholds.max_share;
            verdict = convergent ? Verdict::Convergent : Verdict::Suspect;
        }
        raw.push_back(verdict);
        point.verdict = verdict;
        report.points.push_back(point);
    }

    // monotone smoothing: initial CONVERGENT run, then SUSPECT, then DIVERGENT
    std::size_t c_end = 0;
    while (c_end < raw.size() && raw[c_end] == Verdict::Convergent)
        ++c_end;
    std::size_t d_begin = 0;
    while (d_begin < raw.size() && raw[d_begin] != Verdict::Divergent)
        ++d_begin;

    if (c_end == 0)
        throw BracketError("scan: no CONVERGENT grid point; extend the grid downward or "
                           "increase the path budget");
    if (d_begin == raw.size())
        throw BracketError("scan: no DIVERGENT grid point; extend the grid upward");
    if (c_end == raw.size())
        throw BracketError("scan: grid entirely CONVERGENT; extend the grid upward");

    for (std::size_t i = 0; i < report.points.size(); ++i) {
        const Verdict forced = (i < c_end)     ? Verdict::Convergent
                               : (i < d_begin) ? Verdict::Suspect
                                               : Verdict::Divergent;
        if (forced != raw[i])
            report.smoothed = true;
        report.points[i].verdict = forced;
    }
    report.bracket_lo = v_grid[c_end - 1];
    report.bracket_hi = v_grid[d_begin];
    return report;
}

TailFitReport fit_tail_slope(std::span<const double> samples, std::span<const double> weights,
                             double quantile_lo, double quantile_hi) {
    check_sample_arrays(samples, weights);
    if (!(quantile_lo > 0.9 && quantile_hi < 1.0 && quantile_lo < quantile_hi))
        throw DomainError("tail fit: quantile window must satisfy 0.9 < lo < hi < 1");

    const std::size_t n = samples.size();
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return samples[a] < samples[b];
    });

    double total = 0.0;
    if (weights.empty()) {
        total = static_cast<double>(n);
    } else {
        NeumaierSum sw;
        for (double w : weights)
            sw.add(w);
        total = sw.value();
    }

    // empirical survival on the sorted sample; collect points in the window
    std::vector<double> u, yv;
    NeumaierSum cum;
    for (std::size_t r = 0; r < n; ++r) {
        const std::size_t i = order[r];
        if (!(samples[i] > 0.0))
            throw DomainError("tail fit: samples must be positive");
        cum.add(weights.empty() ? 1.0 : weights[i]);
        const double q = cum.value() / total;
        if (q <= quantile_lo || q > quantile_hi)
            continue;
        const double survival = 1.0 - q;
        if (!(survival > 0.0))
            continue;
        const double logx = std::log(samples[i]);
        u.push_back(logx * logx);
        yv.push_back(-std::log(survival));
    }

    if (u.size() < 1000)
        throw DomainError("tail fit: only " + std::to_string(u.size()) +
                          " tail points in the window, need at least 1000");

    const auto np = static_cast<double>(u.size());
    NeumaierSum su, sy;
    for (std::size_t i = 0; i < u.size(); ++i) {
        su.add(u[i]);
        sy.add(yv[i]);
    }
    const double umean = su.value() / np;
    const double ymean = sy.value() / np;
    NeumaierSum suu, suy, syy;
    for (std::size_t i = 0; i < u.size(); ++i) {
        suu.add((u[i] - umean) * (u[i] - umean));
        suy.add((u[i] - umean) * (yv[i] - ymean));
        syy.add((yv[i] - ymean) * (yv[i] - ymean));
    }
    if (!(suu.value() > 0.0) || !(syy.value() > 0.0))
        throw DomainError("tail fit: degenerate regressor (constant tail)");

    TailFitReport report;
    report.slope = suy.value() / suu.value();
    report.intercept = ymean - report.slope * umean;
    report.quantile_lo = quantile_lo;
    report.quantile_hi = quantile_hi;
    report.n_points = static_cast<std::int64_t>(u.size());
    NeumaierSum ssr;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double resid = yv[i] - (report.intercept + report.slope * u[i]);
        ssr.add(resid * resid);
    }
    report.r_squared = 1.0 - ssr.value() / syy.value();
    if (!(report.slope > 0.0))
        throw DomainError("tail fit: nonpositive slope, tail not log-normal-like");
    return report;
}

double black_caplet_value(double f0, double strike, double total_stdev) {
    if (!(f0 > 0.0))
        throw DomainError("black: forward must be positive");
    if (!(strike >= 0.0))
        throw DomainError("black: strike must be nonnegative");
    if (!(total_stdev >= 0.0))
        throw DomainError("black: total standard deviation must be nonnegative");
    if (strike == 0.0)
        return f0;
    if (total_stdev == 0.0)
        return std::max(f0 - strike, 0.0);
    const double d1 = (std::log(f0 / strike) + 0.5 * total_stdev * total_stdev) / total_stdev;
    const double d2 = d1 - total_stdev;
    return f0 * normal_cdf(d1) - strike * normal_cdf(d2);
}

namespace {

bool point_convergent(std::span<const double> y, std::span<const double> lw,
                      std::span<const double> w, double v, std::size_t n,
                      const ScanThresholds& thresholds, double v_divergent) {
    if (v > v_divergent)
        return false;
    const MomentEstimate full = estimate_from_logs(y, lw, w, v, n);
    if (full.saturated())
        return false;
    if (full.std_error >= thresholds.max_rel_std_error * full.estimate)
        return false;
    if (full.max_contribution_share >= thresholds.max_share)
        return false;
    const double max_step = std::log1p(thresholds.max_doubling_drift);
    double prev = 0.0;
    for (int shift = 4; shift >= 0; --shift) {
        const std::size_t lv = n >> shift;
        if (lv < 2)
            continue;
        const double est = estimate_from_logs(y, lw, w, v, lv).estimate;
        if (shift < 4 && prev > 0.0 &&
            std::abs(std::log(est) - std::log(prev)) >= max_step)
            return false;
        prev = est;
    }
    return true;
}

} // namespace

ProductBoundCheck check_product_bound(const ModelConfig& config, int n, double v,
                                      const TerminalSample& sample,
                                      const ScanThresholds& thresholds) {
    if (n < 1 || n > config.size())
        throw DomainError("product bound: rate index " + std::to_string(n) + " outside 1.." +
                          std::to_string(config.size()));
    const std::vector<double> values = sample.rate_column(n);
    const std::vector<double> weights = rn_weights(sample, config, MeasureId{n});
    const std::vector<double> y = log_squares(values);
    const std::vector<double> lw = log_weights(weights);

    const double vstar = tail_boundary_estimate(y, nullptr);

    ProductBoundCheck check;
    check.v = v;
    if (v != 0.0) {
        const bool lhs_ok =
            point_convergent(y, {}, {}, v, values.size(), thresholds, vstar);
        const bool rhs_ok =
            point_convergent(y, lw, weights, v, values.size(), thresholds, vstar);
        if (!lhs_ok || !rhs_ok)
            throw DomainError("product bound: v = " + std::to_string(v) +
                              " outside the CONVERGENT region of " +
                              (lhs_ok ? "the Q^n side" : "the Q^M side") +
                              "; estimates there are meaningless");
    }

    double constant = 1.0;
    for (int i = n + 1; i <= config.size(); ++i)
        constant *= 1.0 + config.tenor().year_fraction(i) * config.curve().rate(i);
    check.product_constant = constant;

    const MomentEstimate lhs = estimate_logsquare_moment(values, {}, v);
    const MomentEstimate inner = estimate_logsquare_moment(values, weights, v);
    check.lhs = lhs.estimate;
    check.lhs_std_error = lhs.std_error;
    check.rhs = inner.estimate * constant;
    check.rhs_std_error = inner.std_error * constant;
    const double combined =
        std::sqrt(check.lhs_std_error * check.lhs_std_error +
                  check.rhs_std_error * check.rhs_std_error);
    check.holds = check.lhs <= check.rhs + 3.0 * combined;
    return check;
}

} // namespace lmm
