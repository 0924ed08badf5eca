#include "lmm/correlation.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "lmm/errors.hpp"

namespace lmm {

namespace {

using MatrixMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                  Eigen::RowMajor>>;

} // namespace

CorrelationMatrix::CorrelationMatrix(int dim, std::vector<double> row_major)
    : dim_(dim), a_(std::move(row_major)) {
    if (dim_ < 1)
        throw ConfigError("correlation: dimension must be >= 1");
    if (a_.size() != static_cast<std::size_t>(dim_) * dim_)
        throw ConfigError("correlation.matrix: expected " + std::to_string(dim_) + "x" +
                          std::to_string(dim_) + " entries");
    for (int i = 0; i < dim_; ++i) {
        if (a_[static_cast<std::size_t>(i) * dim_ + i] != 1.0)
            throw ConfigError("correlation.matrix[" + std::to_string(i) + "][" +
                              std::to_string(i) + "]: diagonal must be 1");
        for (int j = 0; j < dim_; ++j) {
            const double r = a_[static_cast<std::size_t>(i) * dim_ + j];
            if (!(r >= -1.0 && r <= 1.0))
                throw ConfigError("correlation.matrix[" + std::to_string(i) + "][" +
                                  std::to_string(j) + "]: entry outside [-1,1]");
            if (r != a_[static_cast<std::size_t>(j) * dim_ + i])
                throw ConfigError("correlation.matrix: not symmetric at (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    const double lambda = min_eigenvalue();
    if (lambda < -1e-10)
        throw ConfigError("correlation.matrix: not positive semidefinite, smallest eigenvalue " +
                          std::to_string(lambda));
}

CorrelationMatrix CorrelationMatrix::identity(int dim) {
    std::vector<double> a(static_cast<std::size_t>(dim) * dim, 0.0);
    for (int i = 0; i < dim; ++i)
        a[static_cast<std::size_t>(i) * dim + i] = 1.0;
    return {dim, std::move(a)};
}

CorrelationMatrix CorrelationMatrix::exponential(const TenorStructure& tenor, double beta) {
    if (!(beta >= 0.0))
        throw ConfigError("correlation.beta: must be nonnegative");
    const int m = tenor.size();
    std::vector<double> a(static_cast<std::size_t>(m) * m);
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= m; ++j)
            a[static_cast<std::size_t>(i - 1) * m + (j - 1)] =
                std::exp(-beta * std::abs(tenor.date(i) - tenor.date(j)));
    return {m, std::move(a)};
}

double CorrelationMatrix::min_eigenvalue() const {
    MatrixMap rho(a_.data(), dim_, dim_);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(rho,
                                                          Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

CholeskyFactor cholesky_factor(const CorrelationMatrix& corr) {
    const int m = corr.size();
    MatrixMap rho(corr.data(), m, m);

    Eigen::LLT<Eigen::MatrixXd> llt(rho);
    if (llt.info() != Eigen::Success) {
        // semidefinite-but-singular input: ridge the diagonal and retry
        Eigen::MatrixXd ridged = rho;
        ridged.diagonal().array() += 1e-12;
        llt.compute(ridged);
        if (llt.info() != Eigen::Success)
            throw ConfigError("correlation.matrix: Cholesky failed, smallest eigenvalue " +
                              std::to_string(corr.min_eigenvalue()));
    }
    const Eigen::MatrixXd l = llt.matrixL();
    std::vector<double> a(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= i; ++j)
            a[static_cast<std::size_t>(i) * m + j] = l(i, j);
    return {m, std::move(a)};
}

} // namespace lmm
