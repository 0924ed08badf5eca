#ifndef LMM_MATH_HPP
#define LMM_MATH_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace lmm {

// Standard normal CDF. erfc-based, absolute error well below 1e-12.
double normal_cdf(double x);

// Inverse standard normal CDF on (0,1), Wichura's AS 241 (PPND16).
// Absolute error of the rational approximations is below 1e-15.
double normal_inv_cdf(double p);

// Compensated (Neumaier) accumulator. Running sums over 1e6+ path arrays
// must not depend on how the compiler associates a plain loop, and the
// determinism contract wants one canonical result.
class NeumaierSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

double compensated_sum(std::span<const double> xs);

} // namespace lmm

#endif
