#ifndef LMM_IO_HPP
#define LMM_IO_HPP

#include <ostream>
#include <string>

#include "lmm/estimators.hpp"
#include "lmm/simulate.hpp"

namespace lmm {

// Shortest round-trip decimal representation (up to 17 significant digits);
// all CSV output funnels through this so identical runs are byte-identical.
std::string format_double(double x);

std::string verdict_name(Verdict v);

// header "path,F_1,...,F_M", one row per path
void write_terminal_sample_csv(std::ostream& os, const TerminalSample& sample);

// header "v,estimate,std_error,max_share,n_eff,verdict", one row per grid point
void write_scan_csv(std::ostream& os, const MomentScanReport& report);

// header "slope,intercept,r2,q_lo,q_hi", single summary row
void write_tail_csv(std::ostream& os, const TailFitReport& report);

// human-readable bracket-vs-theorem summary
void write_scan_text(std::ostream& os, const MomentScanReport& report);

} // namespace lmm

#endif
