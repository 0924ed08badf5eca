#include "lmm/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lmm/errors.hpp"
#include "lmm/math.hpp"

namespace lmm {

InitialCurve::InitialCurve(std::vector<double> rates) : rates_(std::move(rates)) {
    if (rates_.empty())
        throw ConfigError("curve: must not be empty");
    for (std::size_t i = 0; i < rates_.size(); ++i) {
        if (!(rates_[i] > 0.0))
            throw ConfigError("curve[" + std::to_string(i) +
                              "]: initial forward rates must be positive");
    }
}

ModelConfig::ModelConfig(TenorStructure tenor, VolTermStructure vols, CorrelationMatrix corr,
                         InitialCurve curve)
    : tenor_(std::move(tenor)), vols_(std::move(vols)), corr_(std::move(corr)),
      curve_(std::move(curve)) {
    const int m = tenor_.size();
    if (vols_.size() != m)
        throw ConfigError("vols: expected " + std::to_string(m) + " entries, got " +
                          std::to_string(vols_.size()));
    if (corr_.size() != m)
        throw ConfigError("correlation: expected dimension " + std::to_string(m) + ", got " +
                          std::to_string(corr_.size()));
    if (curve_.size() != m)
        throw ConfigError("curve: expected " + std::to_string(m) + " entries, got " +
                          std::to_string(curve_.size()));
}

LogSquareMoment lognormal_logsquare_moment(double mu, double sigma2, double v) {
    if (!(sigma2 > 0.0))
        throw DomainError("lognormal_logsquare_moment: sigma2 must be positive");
    const double d = 1.0 - 2.0 * sigma2 * v;
    if (!(d > 0.0))
        return {true, std::numeric_limits<double>::infinity()};
    return {false, std::exp(mu * mu * v / d) / std::sqrt(d)};
}

double terminal_drift(const ModelConfig& config, int n, double t,
                      std::span<const double> rates) {
    const int m = config.size();
    if (n < 1 || n > m)
        throw DomainError("terminal_drift: rate index " + std::to_string(n) + " outside 1.." +
                          std::to_string(m));
    if (static_cast<int>(rates.size()) != m)
        throw DomainError("terminal_drift: state holds " + std::to_string(rates.size()) +
                          " rates, model has " + std::to_string(m));
    if (n == m)
        return 0.0;
    double sum = 0.0;
    for (int j = n + 1; j <= m; ++j) {
        const double tau = config.tenor().year_fraction(j);
        const double f = rates[static_cast<std::size_t>(j - 1)];
        sum += config.corr()(n, j) * tau * config.vols().value(j, t) * f / (1.0 + tau * f);
    }
    return -config.vols().value(n, t) * sum;
}

double frozen_drift_integral(const ModelConfig& config, int n, double t) {
    const int m = config.size();
    if (n < 1 || n > m)
        throw DomainError("frozen_drift_integral: rate index " + std::to_string(n) +
                          " outside 1.." + std::to_string(m));
    if (!(t >= 0.0))
        throw DomainError("frozen_drift_integral: t must be nonnegative");
    if (t > config.tenor().expiry(n))
        throw DomainError("frozen_drift_integral: t = " + std::to_string(t) +
                          " past expiry T_" + std::to_string(n - 1) + " = " +
                          std::to_string(config.tenor().expiry(n)));
    if (n == m || t == 0.0)
        return 0.0;

    // merged breakpoints of every vol entering the integrand
    std::vector<double> cuts;
    for (int j = n; j <= m; ++j)
        for (double b : config.vols().vol(j).breakpoints())
            if (b < t)
                cuts.push_back(b);
    cuts.push_back(0.0);
    cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    NeumaierSum acc;
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double left = cuts[s];
        double sum = 0.0;
        for (int j = n + 1; j <= m; ++j) {
            const double tau = config.tenor().year_fraction(j);
            const double f0 = config.curve().rate(j);
            sum += config.corr()(n, j) * tau * config.vols().value(j, left) * f0 /
                   (1.0 + tau * f0);
        }
        acc.add(-config.vols().value(n, left) * sum * (cuts[s + 1] - left));
    }
    return acc.value();
}

} // namespace lmm
