#include "lmm/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lmm/errors.hpp"
#include "lmm/math.hpp"
#include "lmm/rng.hpp"

namespace lmm {

std::vector<double> TerminalSample::rate_column(int n) const {
    const std::int64_t paths = path_count();
    std::vector<double> out(static_cast<std::size_t>(paths));
    for (std::int64_t p = 0; p < paths; ++p)
        out[static_cast<std::size_t>(p)] = rate(p, n);
    return out;
}

std::vector<double> time_grid(const TenorStructure& tenor, double horizon, int steps_per_year) {
    if (!(horizon > 0.0))
        throw DomainError("time_grid: horizon must be positive");
    if (steps_per_year < 1)
        throw DomainError("time_grid: steps_per_year must be >= 1");

    std::vector<double> grid;
    grid.push_back(0.0);
    const auto total = static_cast<std::int64_t>(std::ceil(horizon * steps_per_year - 1e-12));
    for (std::int64_t k = 1; k < total; ++k)
        grid.push_back(static_cast<double>(k) / steps_per_year);
    for (int i = 0; i <= tenor.size(); ++i)
        if (tenor.date(i) < horizon)
            grid.push_back(tenor.date(i));
    grid.push_back(horizon);
    std::sort(grid.begin(), grid.end());
    // drop duplicates and sub-1e-12 slivers left by uniform/tenor collisions
    std::vector<double> out;
    out.push_back(grid.front());
    for (double t : grid)
        if (t - out.back() > 1e-12)
            out.push_back(t);
    return out;
}

namespace {

struct StepTable {
    std::vector<double> dt;       // step widths
    std::vector<double> sqrt_dt;
    std::vector<double> sigma;    // per step s, per rate n: sigma_n(t_s)
    std::vector<int> live_rates;  // per step: rates 1..live are evolved
    int m;

    double vol(std::size_t step, int n) const { return sigma[step * m + (n - 1)]; }
};

// Everything about the grid that does not depend on the path, evaluated once.
StepTable build_step_table(const ModelConfig& config, const std::vector<double>& grid) {
    const int m = config.size();
    StepTable table;
    table.m = m;
    const std::size_t steps = grid.size() - 1;
    table.dt.resize(steps);
    table.sqrt_dt.resize(steps);
    table.sigma.assign(steps * m, 0.0);
    table.live_rates.resize(steps);
    for (std::size_t s = 0; s < steps; ++s) {
        const double t0 = grid[s];
        table.dt[s] = grid[s + 1] - grid[s];
        table.sqrt_dt[s] = std::sqrt(table.dt[s]);
        int live = 0;
        while (live < m && t0 < config.tenor().expiry(live + 1))
            ++live;
        table.live_rates[s] = live;
        for (int n = 1; n <= live; ++n)
            table.sigma[s * m + (n - 1)] = config.vols().value(n, t0);
    }
    return table;
}

// One full path of the log-Euler scheme.  Both the serial and the OpenMP
// driver funnel through here, so their outputs agree bit for bit.
void simulate_single_path(const ModelConfig& config, const StepTable& table,
                          const CholeskyFactor& chol, std::uint64_t seed,
                          std::uint64_t stream, double sign, std::span<double> z,
                          std::span<double> w, std::span<double> logf, std::span<double> f,
                          std::span<double> out) {
    const int m = table.m;
    PhiloxStream rng(seed, stream);
    for (int j = 0; j < m; ++j) {
        f[j] = config.curve().rate(j + 1);
        logf[j] = std::log(f[j]);
    }
    const double* l = chol.data();
    const std::size_t steps = table.dt.size();
    for (std::size_t s = 0; s < steps; ++s) {
        for (int j = 0; j < m; ++j)
            z[j] = sign * rng.next_normal();
        const int live = table.live_rates[s];
        for (int i = 0; i < live; ++i) {
            double acc = 0.0;
            for (int j = 0; j <= i; ++j)
                acc += l[static_cast<std::size_t>(i) * m + j] * z[j];
            w[i] = acc;
        }
        const double dt = table.dt[s];
        const double sqdt = table.sqrt_dt[s];
        for (int n = live; n >= 1; --n) {
            const double sig = table.vol(s, n);
            double sum = 0.0;
            for (int j = n + 1; j <= m; ++j) {
                const double tau = config.tenor().year_fraction(j);
                const double fj = f[j - 1];
                sum += config.corr()(n, j) * tau * table.vol(s, j) * fj / (1.0 + tau * fj);
            }
            const double drift = -sig * sum;
            logf[n - 1] += (drift - 0.5 * sig * sig) * dt + sig * w[n - 1] * sqdt;
        }
        for (int n = 0; n < live; ++n)
            f[n] = std::exp(logf[n]);
    }
    for (int j = 0; j < m; ++j)
        out[j] = f[j];
}

void check_plan(const ModelConfig& config, const SimulationPlan& plan) {
    if (!(plan.horizon > 0.0))
        throw DomainError("simulate: horizon must be positive");
    if (plan.horizon > config.tenor().date(config.size()))
        throw DomainError("simulate: horizon " + std::to_string(plan.horizon) +
                          " beyond the last tenor date " +
                          std::to_string(config.tenor().date(config.size())));
    if (plan.n_paths < 1)
        throw DomainError("simulate: n_paths must be positive");
    if (plan.steps_per_year < 1)
        throw DomainError("simulate: steps_per_year must be positive");
    if (plan.antithetic && plan.n_paths % 2 != 0)
        throw DomainError("simulate: antithetic sampling needs an even path count");
}

template <bool Parallel>
TerminalSample run_simulation(const ModelConfig& config, const SimulationPlan& plan) {
    check_plan(config, plan);
    const int m = config.size();
    const auto grid = time_grid(config.tenor(), plan.horizon, plan.steps_per_year);
    const StepTable table = build_step_table(config, grid);
    const CholeskyFactor chol = cholesky_factor(config.corr());
    TerminalSample sample(plan.horizon, m, plan.n_paths);

    const bool anti = plan.antithetic;
    const std::uint64_t seed = plan.seed;

#pragma omp parallel if (Parallel)
    {
        std::vector<double> z(m), w(m), logf(m), f(m);
#pragma omp for schedule(static)
        for (std::int64_t p = 0; p < plan.n_paths; ++p) {
            const std::uint64_t stream = anti ? static_cast<std::uint64_t>(p) / 2
                                              : static_cast<std::uint64_t>(p);
            const double sign = (anti && (p % 2 == 1)) ? -1.0 : 1.0;
            simulate_single_path(config, table, chol, seed, stream, sign, z, w, logf, f,
                                 sample.mutable_path(p));
        }
    }
    return sample;
}

} // namespace

TerminalSample simulate_terminal_measure(const ModelConfig& config, const SimulationPlan& plan) {
    return run_simulation<true>(config, plan);
}

TerminalSample simulate_terminal_measure_serial(const ModelConfig& config,
                                                const SimulationPlan& plan) {
    return run_simulation<false>(config, plan);
}

std::vector<double> sample_frozen_drift(const ModelConfig& config, int n, double t,
                                        std::int64_t n_paths, std::uint64_t seed) {
    if (n < 1 || n > config.size())
        throw DomainError("sample_frozen_drift: rate index " + std::to_string(n) +
                          " outside 1.." + std::to_string(config.size()));
    if (!(t > 0.0))
        throw DomainError("sample_frozen_drift: t must be positive");
    if (t > config.tenor().expiry(n))
        throw DomainError("sample_frozen_drift: t = " + std::to_string(t) + " past expiry T_" +
                          std::to_string(n - 1) + " = " +
                          std::to_string(config.tenor().expiry(n)));
    if (n_paths < 1)
        throw DomainError("sample_frozen_drift: n_paths must be positive");

    const double cumvar = cumulative_variance(config.vols(), n, t);
    const double mu = std::log(config.curve().rate(n)) + frozen_drift_integral(config, n, t) -
                      0.5 * cumvar;
    const double sd = std::sqrt(cumvar);
    std::vector<double> out(static_cast<std::size_t>(n_paths));
#pragma omp parallel for schedule(static)
    for (std::int64_t p = 0; p < n_paths; ++p) {
        PhiloxStream rng(seed, static_cast<std::uint64_t>(p));
        out[static_cast<std::size_t>(p)] = std::exp(mu + sd * rng.next_normal());
    }
    return out;
}

double rn_weight_to_measure(std::span<const double> path_rates, double sample_time,
                            const ModelConfig& config, MeasureId target) {
    const int m = config.size();
    if (target.k < 1 || target.k > m)
        throw DomainError("rn_weight_to_measure: measure index " + std::to_string(target.k) +
                          " outside 1.." + std::to_string(m));
    if (static_cast<int>(path_rates.size()) != m)
        throw DomainError("rn_weight_to_measure: state holds " +
                          std::to_string(path_rates.size()) + " rates, model has " +
                          std::to_string(m));
    if (target.k < m && sample_time > config.tenor().date(target.k))
        throw DomainError("rn_weight_to_measure: F_" + std::to_string(target.k + 1) +
                          " already expired at t = " + std::to_string(sample_time) +
                          "; weight to Q^" + std::to_string(target.k) + " undefined");
    double w = 1.0;
    for (int i = target.k + 1; i <= m; ++i) {
        const double tau = config.tenor().year_fraction(i);
        const double fi = path_rates[static_cast<std::size_t>(i - 1)];
        w *= (1.0 + tau * config.curve().rate(i)) / (1.0 + tau * fi);
    }
    return w;
}

std::vector<double> rn_weights(const TerminalSample& sample, const ModelConfig& config,
                               MeasureId target) {
    const std::int64_t paths = sample.path_count();
    std::vector<double> out(static_cast<std::size_t>(paths));
    for (std::int64_t p = 0; p < paths; ++p)
        out[static_cast<std::size_t>(p)] =
            rn_weight_to_measure(sample.path(p), sample.time(), config, target);
    return out;
}

Estimate reweighted_expectation(std::span<const double> payoff_values,
                                std::span<const double> weights) {
    const std::size_t n = payoff_values.size();
    if (n == 0)
        throw DomainError("reweighted_expectation: empty sample");
    if (weights.size() != n)
        throw DomainError("reweighted_expectation: " + std::to_string(n) + " payoffs vs " +
                          std::to_string(weights.size()) + " weights");

    NeumaierSum sw, swg;
    for (std::size_t i = 0; i < n; ++i) {
        sw.add(weights[i]);
        swg.add(weights[i] * payoff_values[i]);
    }
    const double s0 = sw.value();
    const double ratio = swg.value() / s0;

    NeumaierSum sq;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = weights[i] * (payoff_values[i] - ratio);
        sq.add(r * r);
    }
    const double corr = (n > 1) ? static_cast<double>(n) / (static_cast<double>(n) - 1.0) : 1.0;
    return {ratio, std::sqrt(corr * sq.value()) / s0};
}

Estimate reweighted_expectation(const TerminalSample& sample, std::span<const double> weights,
                                const std::function<double(std::span<const double>)>& payoff) {
    const std::int64_t paths = sample.path_count();
    std::vector<double> g(static_cast<std::size_t>(paths));
    for (std::int64_t p = 0; p < paths; ++p)
        g[static_cast<std::size_t>(p)] = payoff(sample.path(p));
    return reweighted_expectation(g, weights);
}

} // namespace lmm
