#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughimg/forward.hpp"

namespace roughimg {

/// The truncated measurement line {(-A + i h, H) : i = 0..2N}, h = A / N.
/// Receivers and sources share this grid.
struct MeasurementLine {
  double H = 1.5;
  double A = 10.0;
  int N = 100;

  double h() const { return A / N; }
  int count() const { return 2 * N + 1; }
  Point2 point(int i) const { return {-A + i * h(), H}; }
  std::vector<Point2> points() const;
  /// Throws DomainError unless H, A > 0 and N >= 1.
  void validate() const;
};

/// Surface truncation for the forward solve. Zero / negative fields mean
/// "derive from the wavelength": half-width A + 4 lambda, taper 2 lambda,
/// 40 nodes per wavelength, lambda = 2 pi / max(k_plus, k_minus).
struct TruncationConfig {
  double half_width = 0.0;
  double taper_width = -1.0;
  double nodes_per_wavelength = 40.0;
  int intervals = 0;  // explicit even interval count overrides nodes_per_wavelength

  struct Resolved {
    double half_width;
    double taper_width;
    int intervals;
  };
  Resolved resolve(double measurement_half_width, double wavelength) const;
};

/// Cauchy data on the measurement line: us(i, j) = u^s(x_i; y_j) and
/// dnus(i, j) = d u^s / d x2 at x_i, for source y_j.
struct CauchyDataSet {
  MeasurementLine line;
  double k_plus = 0.0;
  std::string bc_label;
  std::string surface_label;
  Eigen::MatrixXcd us;
  Eigen::MatrixXcd dnus;
  double noise_delta = 0.0;
  std::uint64_t seed = 0;

  /// Throws FormatError if matrix shapes disagree with the line or delta < 0.
  void validate() const;
};

/// Bookkeeping from one cauchy_data call.
struct ForwardStats {
  std::uint64_t factorizations = 0;
  double rcond = 0.0;
  int surface_nodes = 0;
  double half_width = 0.0;
  double taper_width = 0.0;
  double assemble_seconds = 0.0;
  double solve_seconds = 0.0;
  double evaluate_seconds = 0.0;
};

/// Assembles once, solves all 2N+1 sources with one multi-RHS back
/// substitution, and evaluates the field and its x2-derivative at every
/// receiver. Requires H > max f + lambda / 10 over the surface window.
CauchyDataSet cauchy_data(const BoundaryCondition& bc, const SurfaceProfile& surface, double k_plus,
                          const MeasurementLine& line, const TruncationConfig& trunc = {},
                          ForwardStats* stats = nullptr, int threads = 1, const AssemblyOptions& options = {});

/// Exact Dirichlet data for the plane x2 = c on the same grid (image method).
CauchyDataSet flat_oracle_data(double c, double k_plus, const MeasurementLine& line);

/// lambda used for truncation and resolution: 2 pi / max(k_plus, k_minus).
double resolution_wavelength(const BoundaryCondition& bc, double k_plus);

}  // namespace roughimg
