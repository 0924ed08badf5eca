#ifndef LMM_ESTIMATORS_HPP
#define LMM_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lmm/simulate.hpp"

namespace lmm {

// Monte Carlo estimate of E[exp(v log^2 X)] with heavy-tail diagnostics.
struct MomentEstimate {
    double v = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    // largest single-path share of the weighted sum; ~1 means one path is the estimate
    double max_contribution_share = 0.0;
    // Kish effective sample size of the weights
    double n_effective = 0.0;
    std::int64_t saturated_paths = 0;

    bool saturated() const;
};

// Self-normalized weighted mean of exp(v log^2 x), accumulated in log space
// (one exponentiation per path, max-scaled sums) so that near-boundary v do
// not overflow before saturation is detected.  Pass an empty weights span for
// the unweighted (Q^M) case.
MomentEstimate estimate_logsquare_moment(std::span<const double> samples,
                                         std::span<const double> weights, double v);

enum class Verdict { Convergent, Suspect, Divergent };

struct ScanThresholds {
    double max_rel_std_error = 0.1;  // std_error/estimate below this for CONVERGENT
    double max_share = 0.05;         // max_contribution_share below this for CONVERGENT
    double max_doubling_drift = 0.1; // relative change allowed at each doubling of paths
};

// Deterministic stream of weighted draws; source(n) must return the first n
// elements of one fixed sequence (prefixes of a larger request coincide), so
// the scan's path-doubling ladder looks at nested subsamples.
struct WeightedSample {
    std::vector<double> values;
    std::vector<double> weights; // empty = unweighted
};
using SampleSource = std::function<WeightedSample(std::int64_t)>;

struct ScanPoint {
    MomentEstimate estimate;      // at the full path budget
    MomentEstimate half_estimate; // at half the budget (doubling diagnostic)
    Verdict verdict = Verdict::Suspect;
};

struct MomentScanReport {
    std::vector<ScanPoint> points;
    double bracket_lo = 0.0; // largest CONVERGENT v
    double bracket_hi = 0.0; // smallest DIVERGENT v
    double theoretical = 0.0;
    // the sample's own estimate of where divergence starts (tail mean-excess
    // of log^2 x over the top order statistics, with a safety margin)
    double divergence_threshold = 0.0;
    bool smoothed = false; // raw verdicts violated monotonicity and were demoted

    bool bracket_contains(double v) const { return bracket_lo <= v && v <= bracket_hi; }
};

// Brackets sup{v : E[e^{v log^2 X}] < infinity} from a sample stream.
//
// CONVERGENT needs the spec'd trio at the full budget -- relative standard
// error < theta_1, max contribution share < theta_2, relative change < theta_3
// at every doubling along the nested-prefix ladder.  DIVERGENT marks v past
// the tail-index boundary estimate (where the expectation cannot stabilize
// under doubling because the integrand's tail index drops below one) and any
// v whose evaluation saturates double precision.  Everything else is SUSPECT.
// Verdicts are forced monotone (C..CS..SD..D) before bracketing.
MomentScanReport scan_critical_exponent(const SampleSource& source,
                                        std::span<const double> v_grid,
                                        const ScanThresholds& thresholds,
                                        std::int64_t n_paths, double theoretical);

struct TailFitReport {
    double slope = 0.0; // ~ 1/(2 sigma_eff^2) for a log-normal tail
    double intercept = 0.0;
    double r_squared = 0.0;
    double quantile_lo = 0.0;
    double quantile_hi = 0.0;
    std::int64_t n_points = 0;
};

// OLS of -log S_hat(x) on log^2 x over the survival points whose quantile
// falls in (quantile_lo, quantile_hi); both must lie in (0.9, 1).
TailFitReport fit_tail_slope(std::span<const double> samples, std::span<const double> weights,
                             double quantile_lo, double quantile_hi);

// Undiscounted Black value E[max(F - K, 0)] for log-normal F with forward F0
// and total standard deviation of log F equal to total_stdev.
double black_caplet_value(double f0, double strike, double total_stdev);

struct ProductBoundCheck {
    double v = 0.0;
    double lhs = 0.0; // E^M[phi(F_n)^v]
    double lhs_std_error = 0.0;
    double rhs = 0.0; // E^n[phi(F_n)^v] * prod_{i>n} (1 + tau_i F_i(0))
    double rhs_std_error = 0.0;
    double product_constant = 0.0;
    bool holds = false; // lhs <= rhs within combined 3 SE
};

// Monte Carlo check of the measure-change product bound
//   E^M[phi(F_n(t))^v] <= E^n[phi(F_n(t))^v] prod_{i=n+1}^M (1 + tau_i F_i(0)),
// phi(x) = exp(log^2 x).  Refuses v outside the CONVERGENT region of either
// side (the estimates would be meaningless there).
ProductBoundCheck check_product_bound(const ModelConfig& config, int n, double v,
                                      const TerminalSample& sample,
                                      const ScanThresholds& thresholds = {});

} // namespace lmm

#endif
