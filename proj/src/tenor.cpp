#include "lmm/tenor.hpp"

#include <string>

#include "lmm/errors.hpp"

namespace lmm {

TenorStructure::TenorStructure(std::vector<double> dates, std::vector<double> year_fractions)
    : dates_(std::move(dates)), taus_(std::move(year_fractions)) {
    if (dates_.size() < 2)
        throw ConfigError("tenor.dates: need at least T_0 and T_1");
    if (!(dates_[0] > 0.0))
        throw ConfigError("tenor.dates[0]: T_0 must be positive, got " +
                          std::to_string(dates_[0]));
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (!(dates_[i] > dates_[i - 1]))
            throw ConfigError("tenor.dates[" + std::to_string(i) +
                              "]: dates must be strictly increasing");
    }
    if (taus_.empty()) {
        taus_.resize(dates_.size() - 1);
        for (std::size_t n = 0; n + 1 < dates_.size(); ++n)
            taus_[n] = dates_[n + 1] - dates_[n];
    }
    if (taus_.size() != dates_.size() - 1)
        throw ConfigError("tenor.year_fractions: expected " +
                          std::to_string(dates_.size() - 1) + " entries, got " +
                          std::to_string(taus_.size()));
    for (std::size_t n = 0; n < taus_.size(); ++n) {
        if (!(taus_[n] > 0.0))
            throw ConfigError("tenor.year_fractions[" + std::to_string(n) +
                              "]: must be positive");
    }
}

} // namespace lmm
