#pragma once

// Truncated Nystrom boundary-integral solver for point-source scattering by a
// rough surface x2 = f(x1), with Dirichlet, impedance, or transmission
// conditions.
//
// Representations (nu points out of the upper region, i.e. downward):
//   Dirichlet:    u^s = D phi,              (-1/2 + K) phi = -Phi
//   impedance:    u^s = S phi,              (1/2 + K' - i k rho S) phi = -(d_nu - i k rho) Phi
//   transmission: u^s = D+ phi1 + S+ phi2,  u^t = D- phi1 + S- phi2,
//     [ K+ - K- - I    S+ - S-        ] [phi1]   [ -Phi      ]
//     [ T+ - T-        K'+ - K'- + I  ] [phi2] = [ -d_nu Phi ]
// Kernels are free-space Phi_k on a truncated surface whose quadrature
// weights roll off to zero over a taper band at both ends.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "roughimg/dense_lu.hpp"
#include "roughimg/expression.hpp"
#include "roughimg/surfaces.hpp"
#include "roughimg/types.hpp"

namespace roughimg {

enum class BcKind { dirichlet, impedance, transmission };

class BoundaryCondition {
 public:
  struct Dirichlet {};
  struct Impedance {
    Expression rho;
  };
  struct Transmission {
    double k_minus;
  };

  static BoundaryCondition dirichlet() { return BoundaryCondition(Dirichlet{}); }
  static BoundaryCondition impedance(Expression rho) { return BoundaryCondition(Impedance{std::move(rho)}); }
  /// Throws DomainError unless k_minus > 0.
  static BoundaryCondition transmission(double k_minus);

  BcKind kind() const;
  /// Canonical text form: "dirichlet", "impedance:<rho>", "transmission:<k_minus>".
  std::string label() const;
  /// Inverse of label().
  static BoundaryCondition from_label(const std::string& label);

  const Impedance& as_impedance() const { return std::get<Impedance>(value_); }
  double k_minus() const { return std::get<Transmission>(value_).k_minus; }
  /// Number of density blocks (1, or 2 for transmission).
  int blocks() const { return kind() == BcKind::transmission ? 2 : 1; }

 private:
  explicit BoundaryCondition(std::variant<Dirichlet, Impedance, Transmission> v) : value_(std::move(v)) {}
  std::variant<Dirichlet, Impedance, Transmission> value_;
};

/// Profile plus the nodes it was discretized on.
struct Discretization {
  SurfaceProfile profile;
  std::vector<SurfaceNode> nodes;
  double half_width = 0.0;
  double taper_width = 0.0;
  double step = 0.0;  // uniform parameter spacing

  std::size_t size() const { return nodes.size(); }
};

/// Diagnostic knobs; defaults give the physical system.
struct AssemblyOptions {
  /// Negate every identity (jump) term. Used only by sign-audit tests.
  bool flip_jump_sign = false;
};

/// Assembled and factorized boundary system. Copies share the factorization.
class BoundarySystem {
 public:
  BoundarySystem(BoundaryCondition bc, double k_plus, std::shared_ptr<const Discretization> disc,
                 std::shared_ptr<const DenseLu> lu)
      : bc_(std::move(bc)), k_plus_(k_plus), disc_(std::move(disc)), lu_(std::move(lu)) {}

  const BoundaryCondition& bc() const { return bc_; }
  double k_plus() const { return k_plus_; }
  const Discretization& discretization() const { return *disc_; }
  std::shared_ptr<const Discretization> discretization_ptr() const { return disc_; }
  const DenseLu& lu() const { return *lu_; }
  std::uint64_t factorization_id() const { return lu_->id(); }
  double rcond() const { return lu_->rcond(); }

 private:
  BoundaryCondition bc_;
  double k_plus_;
  std::shared_ptr<const Discretization> disc_;
  std::shared_ptr<const DenseLu> lu_;
};

/// The unfactorized Nystrom matrix (n x n, or 2n x 2n for transmission).
Eigen::MatrixXcd assemble_matrix(const BoundaryCondition& bc, const Discretization& disc, double k_plus,
                                 const AssemblyOptions& options = {});

/// Builds the discretization from `nodes`, assembles, and factorizes once.
/// Throws SingularMatrixError (with the condition estimate) if the matrix is
/// numerically singular.
BoundarySystem assemble(const BoundaryCondition& bc, const SurfaceProfile& surface, double k_plus,
                        std::vector<SurfaceNode> nodes, const AssemblyOptions& options = {});

/// Density for one source; values stacks phi1 then phi2 (transmission only).
struct DensitySolution {
  std::shared_ptr<const Discretization> disc;
  BcKind kind = BcKind::dirichlet;
  Eigen::VectorXcd values;
  std::uint64_t factorization_id = 0;

  Eigen::Index nodes() const { return static_cast<Eigen::Index>(disc->size()); }
  auto phi1() const { return values.head(nodes()); }
  auto phi2() const { return values.tail(nodes()); }
};

/// Densities for many sources: column j of `values` belongs to sources[j].
struct DensityBatch {
  std::shared_ptr<const Discretization> disc;
  BcKind kind = BcKind::dirichlet;
  Eigen::MatrixXcd values;
  std::uint64_t factorization_id = 0;

  DensitySolution column(Eigen::Index j) const { return {disc, kind, values.col(j), factorization_id}; }
};

/// Right-hand side column for one source (size n, or 2n).
Eigen::VectorXcd boundary_data(const BoundaryCondition& bc, const Discretization& disc, double k_plus,
                               Point2 source);

/// One back-substitution against the cached factorization. The source must
/// lie strictly above the surface.
DensitySolution solve_density(const BoundarySystem& system, Point2 source);
DensityBatch solve_densities(const BoundarySystem& system, std::span<const Point2> sources);

/// Linear maps from the stacked density to field values and gradients at a
/// set of points. Points closer to the surface than a few node spacings get a
/// locally refined quadrature with interpolated density.
struct FieldOperator {
  Eigen::MatrixXcd value;
  Eigen::MatrixXcd d1;
  Eigen::MatrixXcd d2;
};

enum class Side { upper, lower };

/// Representation operator for the field on `side` (upper: scattered field
/// with wavenumber k_plus; lower: transmitted field with k_minus).
FieldOperator field_operator(BcKind kind, const Discretization& disc, double k, Side side,
                             std::span<const Point2> points, bool with_gradient, int threads = 1);

/// Scattered field u^s at points strictly above the surface.
std::vector<Complex> scattered_field(const DensitySolution& density, const BoundaryCondition& bc, double k_plus,
                                     std::span<const Point2> points);
std::vector<ComplexGradient> scattered_gradient(const DensitySolution& density, const BoundaryCondition& bc,
                                                double k_plus, std::span<const Point2> points);

/// Transmitted field u^t at points strictly below the surface (transmission only).
std::vector<Complex> transmitted_field(const DensitySolution& density, double k_minus,
                                       std::span<const Point2> points);
std::vector<ComplexGradient> transmitted_gradient(const DensitySolution& density, double k_minus,
                                                  std::span<const Point2> points);

/// Exact Dirichlet half-plane solution for the plane x2 = c by reflection:
/// u^s = -Phi_k(x, (y1, 2c - y2)) and its x2-derivative.
struct OracleValue {
  Complex us;
  Complex dus;  // d/dx2
};
OracleValue flat_plane_oracle(double c, double k, Point2 x, Point2 y);

}  // namespace roughimg
