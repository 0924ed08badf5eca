#ifndef LMM_MODEL_HPP
#define LMM_MODEL_HPP

#include <span>
#include <vector>

#include "lmm/correlation.hpp"
#include "lmm/tenor.hpp"
#include "lmm/vol.hpp"

namespace lmm {

// Initial forward curve F_1(0)..F_M(0), decimal per annum, all positive.
class InitialCurve {
  public:
    explicit InitialCurve(std::vector<double> rates);

    int size() const { return static_cast<int>(rates_.size()); }
    double rate(int n) const { return rates_[static_cast<std::size_t>(n - 1)]; }
    const std::vector<double>& rates() const { return rates_; }

  private:
    std::vector<double> rates_;
};

// The T_k-forward measure Q^k, k in 1..M.  k == M is the terminal measure.
struct MeasureId {
    int k;
};

// Full static model: everything the dynamics depend on.  Immutable after
// construction; all operations on it are pure.
class ModelConfig {
  public:
    ModelConfig(TenorStructure tenor, VolTermStructure vols, CorrelationMatrix corr,
                InitialCurve curve);

    int size() const { return tenor_.size(); } // M
    const TenorStructure& tenor() const { return tenor_; }
    const VolTermStructure& vols() const { return vols_; }
    const CorrelationMatrix& corr() const { return corr_; }
    const InitialCurve& curve() const { return curve_; }

  private:
    TenorStructure tenor_;
    VolTermStructure vols_;
    CorrelationMatrix corr_;
    InitialCurve curve_;
};

// E[exp(v log^2 X)] for log X ~ N(mu, sigma2).  Divergence (v >= 1/(2 sigma2))
// is a first-class outcome, not an error: the theorem under test is about the
// location of that boundary.
struct LogSquareMoment {
    bool divergent;
    double value; // +inf when divergent
};

LogSquareMoment lognormal_logsquare_moment(double mu, double sigma2, double v);

// Q^M drift rate of F_n at time t, per unit of F_n (the dt coefficient of
// d log F_n plus sigma_n^2/2):
//   -sigma_n(t) sum_{j>n} rho_nj tau_j sigma_j(t) F_j(t) / (1 + tau_j F_j(t))
// rates[j-1] = F_j(t).  Exactly 0 for n == M.
double terminal_drift(const ModelConfig& config, int n, double t,
                      std::span<const double> rates);

// integral_0^t of the frozen drift (same sum with F_j(0) in place of F_j(s)),
// exact over the merged breakpoints of all volatilities involved.
double frozen_drift_integral(const ModelConfig& config, int n, double t);

} // namespace lmm

#endif
