#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "roughimg/types.hpp"

namespace roughimg {

/// LU factorization with partial pivoting of a dense complex matrix (LAPACK
/// zgetrf), kept for repeated back-substitution. Immutable after
/// construction; solve() may be called concurrently.
class DenseLu {
 public:
  /// Factorizes `matrix`. Throws SingularMatrixError when the reciprocal
  /// 1-norm condition estimate falls below `min_rcond`.
  explicit DenseLu(Eigen::MatrixXcd matrix, double min_rcond = 1e-14);

  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;
  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const;

  Eigen::Index size() const { return factors_.rows(); }
  /// Reciprocal condition number estimate in the 1-norm (zgecon).
  double rcond() const { return rcond_; }
  /// Process-unique identifier of this factorization.
  std::uint64_t id() const { return id_; }

  /// Number of factorizations performed by this process so far.
  static std::uint64_t factorization_count();

 private:
  Eigen::MatrixXcd factors_;
  std::vector<int> pivots_;
  double rcond_ = 0.0;
  std::uint64_t id_ = 0;
};

}  // namespace roughimg
