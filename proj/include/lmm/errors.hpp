#ifndef LMM_ERRORS_HPP
#define LMM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lmm {

// Invalid or inconsistent model configuration (bad input file, broken invariant).
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Arguments outside an operation's domain (expired rate, horizon too long,
// nonpositive variance, empty sample, too few tail points).
class DomainError : public std::runtime_error {
  public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A critical-exponent scan whose grid does not straddle the boundary.
class BracketError : public std::runtime_error {
  public:
    explicit BracketError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace lmm

#endif
