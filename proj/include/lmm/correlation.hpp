#ifndef LMM_CORRELATION_HPP
#define LMM_CORRELATION_HPP

#include <vector>

#include "lmm/tenor.hpp"

namespace lmm {

// Dense lower-triangular factor L with L L^T = rho.  Indices are 1-based to
// match rate indexing throughout the library.
class CholeskyFactor {
  public:
    CholeskyFactor(int dim, std::vector<double> row_major)
        : dim_(dim), a_(std::move(row_major)) {}

    int size() const { return dim_; }
    double operator()(int i, int j) const {
        return a_[static_cast<std::size_t>(i - 1) * dim_ + (j - 1)];
    }
    const double* data() const { return a_.data(); } // row-major, 0-based

  private:
    int dim_;
    std::vector<double> a_;
};

// Instantaneous correlation matrix of the driving Brownian motions.
// Symmetric, unit diagonal, entries in [-1,1], positive semidefinite
// (smallest eigenvalue >= -1e-10).
class CorrelationMatrix {
  public:
    CorrelationMatrix(int dim, std::vector<double> row_major);

    static CorrelationMatrix identity(int dim);
    // rho_ij = exp(-beta |T_i - T_j|) on the rates' maturity dates T_1..T_M.
    static CorrelationMatrix exponential(const TenorStructure& tenor, double beta);

    int size() const { return dim_; }
    double operator()(int i, int j) const { // 1-based
        return a_[static_cast<std::size_t>(i - 1) * dim_ + (j - 1)];
    }
    const double* data() const { return a_.data(); }

    double min_eigenvalue() const;

  private:
    int dim_;
    std::vector<double> a_;
};

// Lower-triangular L with ||L L^T - rho||_max <= 1e-10.  Singular but
// semidefinite inputs get a 1e-12 diagonal ridge before factoring.
CholeskyFactor cholesky_factor(const CorrelationMatrix& corr);

} // namespace lmm

#endif
