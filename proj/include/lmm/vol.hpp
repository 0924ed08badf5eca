#ifndef LMM_VOL_HPP
#define LMM_VOL_HPP

#include <vector>

namespace lmm {

// Right-continuous step function on [0, inf): value is levels[i] on
// [breakpoints[i-1], breakpoints[i]) with breakpoints[-1] = 0, and the last
// level extends beyond the last breakpoint.  levels.size() == breakpoints.size() + 1.
class PiecewiseConstantVol {
  public:
    explicit PiecewiseConstantVol(std::vector<double> levels,
                                  std::vector<double> breakpoints = {});

    double operator()(double t) const;

    // integral_0^t of sigma(s)^2 ds, exact segment-by-segment sum
    double integrated_square(double t) const;

    const std::vector<double>& levels() const { return levels_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

  private:
    std::vector<double> levels_;
    std::vector<double> breakpoints_;
};

// One piecewise-constant sigma_n per rate n = 1..M.
class VolTermStructure {
  public:
    explicit VolTermStructure(std::vector<PiecewiseConstantVol> vols);

    int size() const { return static_cast<int>(vols_.size()); }
    const PiecewiseConstantVol& vol(int n) const { return vols_[static_cast<std::size_t>(n - 1)]; }
    double value(int n, double t) const { return vol(n)(t); }

  private:
    std::vector<PiecewiseConstantVol> vols_;
};

// integral_0^t sigma_n(s)^2 ds
double cumulative_variance(const VolTermStructure& vols, int n, double t);

// 1 / (2 integral_0^t sigma_n(s)^2 ds); the critical moment of the
// frozen-drift rate and, by the measure-change argument, of the true rate.
double critical_exponent(const VolTermStructure& vols, int n, double t);

} // namespace lmm

#endif
