#ifndef LMM_VALIDATE_HPP
#define LMM_VALIDATE_HPP

#include <string>
#include <vector>

#include "lmm/estimators.hpp"
#include "lmm/simulate.hpp"

namespace lmm {

struct CheckResult {
    std::string name;
    bool passed;
    double statistic; // measured value of the check statistic
    double threshold; // bound it was compared against
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_passed() const {
        for (const CheckResult& c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

struct ValidationSettings {
    int rate = 1;                                       // rate for caplet / product bound
    std::vector<double> product_bound_vs = {1.0, 5.0, 10.0};
    std::vector<double> strike_fractions = {0.5, 1.0, 1.5}; // times F_n(0)
    double z_limit = 3.0;                               // SE band for all identities
};

// Property battery on one Q^M simulation:
//   - F_M martingale under Q^M
//   - mean RN weight to every Q^n equals 1
//   - reweighted mean of F_n(t) equals F_n(0) for every n
//   - reweighted caplet prices match the Black formula
//   - measure-change product bound holds
// Statistics are z-scores against z_limit except the product bound rows,
// which record (lhs - rhs) / combined SE.
ValidationReport run_validation(const ModelConfig& config, const SimulationPlan& plan,
                                const ValidationSettings& settings = {});

void write_validation_csv(std::ostream& os, const ValidationReport& report);

} // namespace lmm

#endif
