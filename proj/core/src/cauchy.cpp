#include "roughimg/cauchy.hpp"

#include <chrono>
#include <cmath>

#include "roughimg/specfun.hpp"

namespace roughimg {

std::vector<Point2> MeasurementLine::points() const {
  std::vector<Point2> out;
  out.reserve(static_cast<std::size_t>(count()));
  for (int i = 0; i < count(); ++i) out.push_back(point(i));
  return out;
}

void MeasurementLine::validate() const {
  if (!(H > 0.0) || !std::isfinite(H)) throw DomainError("measurement line: H must be > 0");
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("measurement line: A must be > 0");
  if (N < 1) throw DomainError("measurement line: N must be >= 1");
}

TruncationConfig::Resolved TruncationConfig::resolve(double measurement_half_width, double wavelength) const {
  Resolved r{};
  r.half_width = half_width > 0.0 ? half_width : measurement_half_width + 4.0 * wavelength;
  r.taper_width = taper_width >= 0.0 ? taper_width : 2.0 * wavelength;
  if (r.taper_width >= r.half_width) throw DomainError("truncation: taper width must be below the half-width");
  if (intervals > 0) {
    r.intervals = intervals + (intervals % 2);
  } else {
    if (!(nodes_per_wavelength > 0.0)) throw DomainError("truncation: nodes per wavelength must be > 0");
    const int raw = static_cast<int>(std::ceil(2.0 * r.half_width * nodes_per_wavelength / wavelength));
    r.intervals = raw + (raw % 2);
  }
  r.intervals = std::max(r.intervals, 16);
  return r;
}

void CauchyDataSet::validate() const {
  const Eigen::Index m = line.count();
  if (us.rows() != m || us.cols() != m || dnus.rows() != m || dnus.cols() != m)
    throw FormatError("Cauchy data: matrix shape does not match the measurement line");
  if (!(noise_delta >= 0.0)) throw FormatError("Cauchy data: noise delta must be >= 0");
}

double resolution_wavelength(const BoundaryCondition& bc, double k_plus) {
  double k = k_plus;
  if (bc.kind() == BcKind::transmission) k = std::max(k, bc.k_minus());
  return 2.0 * pi / k;
}

CauchyDataSet cauchy_data(const BoundaryCondition& bc, const SurfaceProfile& surface, double k_plus,
                          const MeasurementLine& line, const TruncationConfig& trunc, ForwardStats* stats,
                          int threads, const AssemblyOptions& options) {
  using clock = std::chrono::steady_clock;
  line.validate();
  if (!(k_plus > 0.0)) throw DomainError("cauchy_data: k_plus must be > 0");
  const double lambda = resolution_wavelength(bc, k_plus);
  const auto t = trunc.resolve(line.A, lambda);
  const double top = surface.max_height(-t.half_width, t.half_width, 20001);
  if (!(line.H > top + 0.1 * (2.0 * pi / k_plus)))
    throw DomainError("cauchy_data: measurement height must exceed max f + lambda/10");

  const auto t0 = clock::now();
  const auto system = assemble(bc, surface, k_plus, quadrature_nodes(surface, t.half_width, t.intervals, t.taper_width),
                               options);
  const auto t1 = clock::now();
  const auto grid = line.points();
  const auto densities = solve_densities(system, grid);
  const auto t2 = clock::now();
  const auto op = field_operator(bc.kind(), system.discretization(), k_plus, Side::upper, grid, true, threads);

  CauchyDataSet data;
  data.line = line;
  data.k_plus = k_plus;
  data.bc_label = bc.label();
  data.surface_label = surface.label();
  data.us = op.value * densities.values;
  data.dnus = op.d2 * densities.values;
  const auto t3 = clock::now();

  if (stats) {
    stats->factorizations = 1;
    stats->rcond = system.rcond();
    stats->surface_nodes = static_cast<int>(system.discretization().size());
    stats->half_width = t.half_width;
    stats->taper_width = t.taper_width;
    stats->assemble_seconds = std::chrono::duration<double>(t1 - t0).count();
    stats->solve_seconds = std::chrono::duration<double>(t2 - t1).count();
    stats->evaluate_seconds = std::chrono::duration<double>(t3 - t2).count();
  }
  return data;
}

CauchyDataSet flat_oracle_data(double c, double k_plus, const MeasurementLine& line) {
  line.validate();
  const int m = line.count();
  CauchyDataSet data;
  data.line = line;
  data.k_plus = k_plus;
  data.bc_label = "dirichlet";
  data.surface_label = flat(c).label();
  data.us.resize(m, m);
  data.dnus.resize(m, m);
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      // Diagonal entries (x = y) are regular: only the image point is singular.
      const Point2 image = mirror_about(line.point(j), c);
      data.us(i, j) = -phi(k_plus, line.point(i), image);
      data.dnus(i, j) = -grad_phi(k_plus, line.point(i), image).d2;
    }
  }
  return data;
}

}  // namespace roughimg
