#include "roughimg/dense_lu.hpp"

#include <atomic>
#include <complex>
#include <sstream>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace roughimg {

namespace {
std::atomic<std::uint64_t> g_factorizations{0};
}

DenseLu::DenseLu(Eigen::MatrixXcd matrix, double min_rcond) : factors_(std::move(matrix)) {
  const auto n = factors_.rows();
  if (n == 0 || factors_.cols() != n) throw DomainError("DenseLu: matrix must be square and nonempty");

  const double anorm = factors_.cwiseAbs().colwise().sum().maxCoeff();
  pivots_.resize(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, static_cast<lapack_int>(n), static_cast<lapack_int>(n),
                                         factors_.data(), static_cast<lapack_int>(n), pivots_.data());
  id_ = ++g_factorizations;
  if (info < 0) throw NumericalError("zgetrf: illegal argument " + std::to_string(-info));
  if (info > 0) {
    throw SingularMatrixError("system matrix is exactly singular (zero pivot at " + std::to_string(info) + ")",
                              0.0);
  }
  const lapack_int cinfo = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', static_cast<lapack_int>(n), factors_.data(),
                                          static_cast<lapack_int>(n), anorm, &rcond_);
  if (cinfo != 0) throw NumericalError("zgecon failed");
  if (rcond_ < min_rcond) {
    std::ostringstream msg;
    msg << "system matrix is numerically singular (rcond estimate " << rcond_ << ")";
    throw SingularMatrixError(msg.str(), rcond_);
  }
}

Eigen::MatrixXcd DenseLu::solve(const Eigen::MatrixXcd& rhs) const {
  if (rhs.rows() != size()) throw DomainError("DenseLu::solve: right-hand side has wrong row count");
  Eigen::MatrixXcd x = rhs;
  if (x.cols() == 0) return x;
  const lapack_int info =
      LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', static_cast<lapack_int>(size()), static_cast<lapack_int>(x.cols()),
                     const_cast<Complex*>(factors_.data()), static_cast<lapack_int>(size()),
                     const_cast<int*>(pivots_.data()), x.data(),
                     static_cast<lapack_int>(x.rows()));
  if (info != 0) throw NumericalError("zgetrs failed");
  return x;
}

Eigen::VectorXcd DenseLu::solve(const Eigen::VectorXcd& rhs) const {
  Eigen::MatrixXcd m = rhs;
  return solve(m).col(0);
}

std::uint64_t DenseLu::factorization_count() { return g_factorizations.load(); }

}  // namespace roughimg
