#include "lmm/vol.hpp"

#include <algorithm>
#include <string>

#include "lmm/errors.hpp"
#include "lmm/math.hpp"

namespace lmm {

PiecewiseConstantVol::PiecewiseConstantVol(std::vector<double> levels,
                                           std::vector<double> breakpoints)
    : levels_(std::move(levels)), breakpoints_(std::move(breakpoints)) {
    if (levels_.empty())
        throw ConfigError("vol.levels: must not be empty");
    if (levels_.size() != breakpoints_.size() + 1)
        throw ConfigError("vol.levels: expected breakpoints.size()+1 = " +
                          std::to_string(breakpoints_.size() + 1) + " levels, got " +
                          std::to_string(levels_.size()));
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
        const double prev = (i == 0) ? 0.0 : breakpoints_[i - 1];
        if (!(breakpoints_[i] > prev))
            throw ConfigError("vol.breakpoints[" + std::to_string(i) +
                              "]: must be positive and strictly increasing");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (!(levels_[i] > 0.0))
            throw ConfigError("vol.levels[" + std::to_string(i) + "]: must be positive");
    }
}

double PiecewiseConstantVol::operator()(double t) const {
    if (!(t >= 0.0))
        throw DomainError("vol: time must be nonnegative");
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return levels_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double PiecewiseConstantVol::integrated_square(double t) const {
    if (!(t >= 0.0))
        throw DomainError("vol: integration horizon must be nonnegative");
    NeumaierSum acc;
    double left = 0.0;
    for (std::size_t i = 0; i < breakpoints_.size() && left < t; ++i) {
        const double right = std::min(breakpoints_[i], t);
        acc.add(levels_[i] * levels_[i] * (right - left));
        left = right;
    }
    if (left < t)
        acc.add(levels_.back() * levels_.back() * (t - left));
    return acc.value();
}

VolTermStructure::VolTermStructure(std::vector<PiecewiseConstantVol> vols)
    : vols_(std::move(vols)) {
    if (vols_.empty())
        throw ConfigError("vols: must not be empty");
}

double cumulative_variance(const VolTermStructure& vols, int n, double t) {
    if (n < 1 || n > vols.size())
        throw DomainError("cumulative_variance: rate index " + std::to_string(n) +
                          " outside 1.." + std::to_string(vols.size()));
    return vols.vol(n).integrated_square(t);
}

double critical_exponent(const VolTermStructure& vols, int n, double t) {
    if (!(t > 0.0))
        throw DomainError("critical_exponent: requires t > 0");
    return 1.0 / (2.0 * cumulative_variance(vols, n, t));
}

} // namespace lmm
