#ifndef LMM_SIMULATE_HPP
#define LMM_SIMULATE_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lmm/model.hpp"

namespace lmm {

// Forward-rate vector at a fixed time.  rates[n-1] carries F_n: the live
// value while t < T_{n-1}, the fixing F_n(T_{n-1}) once the rate expired.
struct MarketState {
    double time;
    std::vector<double> rates;

    bool expired(const TenorStructure& tenor, int n) const {
        return time >= tenor.expiry(n);
    }
};

struct SimulationPlan {
    double horizon;
    int steps_per_year = 64;
    std::int64_t n_paths = 100'000;
    std::uint64_t seed = 42;
    bool antithetic = false;
};

// Terminal states of all paths, row-major (path-major) storage.
class TerminalSample {
  public:
    TerminalSample(double time, int rate_count, std::int64_t n_paths)
        : time_(time), m_(rate_count),
          rates_(static_cast<std::size_t>(n_paths) * rate_count) {}

    double time() const { return time_; }
    int rate_count() const { return m_; }
    std::int64_t path_count() const { return static_cast<std::int64_t>(rates_.size()) / m_; }

    double rate(std::int64_t path, int n) const {
        return rates_[static_cast<std::size_t>(path) * m_ + (n - 1)];
    }
    std::span<const double> path(std::int64_t p) const {
        return {rates_.data() + static_cast<std::size_t>(p) * m_, static_cast<std::size_t>(m_)};
    }
    std::span<double> mutable_path(std::int64_t p) {
        return {rates_.data() + static_cast<std::size_t>(p) * m_, static_cast<std::size_t>(m_)};
    }

    // running likelihood factor 1 + tau_i F_i(t*)
    double likelihood_factor(const ModelConfig& config, std::int64_t path, int i) const {
        return 1.0 + config.tenor().year_fraction(i) * rate(path, i);
    }

    // column extraction, e.g. all terminal values of one rate
    std::vector<double> rate_column(int n) const;

  private:
    double time_;
    int m_;
    std::vector<double> rates_;
};

// Simulation time grid: 0, the uniform grid at steps_per_year, every tenor
// date below the horizon, and the horizon itself.  Expiries are hit exactly.
std::vector<double> time_grid(const TenorStructure& tenor, double horizon, int steps_per_year);

// Log-Euler scheme for the Q^M dynamics, drift and volatility at the left
// endpoint, rates frozen at their fixing once t reaches T_{n-1}.  Path p
// consumes the Philox substream keyed by (seed, p) (antithetic: pair p/2 with
// the normal vector negated on odd p), so the result is a pure function of
// (config, plan) regardless of thread count.
TerminalSample simulate_terminal_measure(const ModelConfig& config, const SimulationPlan& plan);

// Single-threaded reference of the same kernel, bit-identical to the OpenMP
// version by construction; kept for tests and benchmarks.
TerminalSample simulate_terminal_measure_serial(const ModelConfig& config,
                                                const SimulationPlan& plan);

// Exact draws of the frozen-drift rate F_n^fd(t) under Q^M:
//   log F ~ N(log F_n(0) + fdi - cumvar/2, cumvar)
// No discretization error; path p reads substream (seed, p).
std::vector<double> sample_frozen_drift(const ModelConfig& config, int n, double t,
                                        std::int64_t n_paths, std::uint64_t seed);

// dQ^n/dQ^M restricted to F_t: prod_{i=n+1}^M (1 + tau_i F_i(0)) / (1 + tau_i F_i(t)).
// Requires every F_i in the product to be live at the sample time (t <= T_n).
double rn_weight_to_measure(std::span<const double> path_rates, double sample_time,
                            const ModelConfig& config, MeasureId target);

std::vector<double> rn_weights(const TerminalSample& sample, const ModelConfig& config,
                               MeasureId target);

struct Estimate {
    double value;
    double std_error;
};

// Self-normalized importance-sampling mean sum(w g)/sum(w) with the
// delta-method standard error of the ratio.
Estimate reweighted_expectation(std::span<const double> payoff_values,
                                std::span<const double> weights);

Estimate reweighted_expectation(const TerminalSample& sample, std::span<const double> weights,
                                const std::function<double(std::span<const double>)>& payoff);

} // namespace lmm

#endif
