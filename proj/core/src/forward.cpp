#include "roughimg/forward.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "roughimg/kernels.hpp"
#include "roughimg/parallel.hpp"
#include "roughimg/specfun.hpp"

namespace roughimg {

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(const std::string& text, const std::string& what) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw DomainError(what + ": cannot parse number '" + text + "'");
  return v;
}

// Uniform step of a node list, or DomainError if the nodes are not uniform.
double uniform_step(const std::vector<SurfaceNode>& nodes) {
  if (nodes.size() < 2) throw DomainError("assemble: need at least two surface nodes");
  const double step = nodes[1].s - nodes[0].s;
  if (!(step > 0.0)) throw DomainError("assemble: node parameters must increase");
  for (std::size_t m = 1; m < nodes.size(); ++m) {
    if (std::fabs(nodes[m].s - nodes[m - 1].s - step) > 1e-9 * step)
      throw DomainError("assemble: surface nodes must be uniformly spaced");
  }
  return step;
}

// C-infinity transition from 1 (u <= 0) to 0 (u >= 1).
double smooth_cutoff(double u) {
  if (u <= 0.0) return 1.0;
  if (u >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / u);
  const double b = std::exp(-1.0 / (1.0 - u));
  return b / (a + b);
}

void check_transmission(const BoundaryCondition& bc, double k_plus, bool allow_equal) {
  if (bc.kind() != BcKind::transmission) return;
  if (!allow_equal && bc.k_minus() == k_plus)
    throw DomainError("transmission: k_minus must differ from k_plus");
}

}  // namespace

BoundaryCondition BoundaryCondition::transmission(double k_minus) {
  if (!(k_minus > 0.0) || !std::isfinite(k_minus)) throw DomainError("transmission: k_minus must be > 0");
  return BoundaryCondition(Transmission{k_minus});
}

BcKind BoundaryCondition::kind() const {
  switch (value_.index()) {
    case 0: return BcKind::dirichlet;
    case 1: return BcKind::impedance;
    default: return BcKind::transmission;
  }
}

std::string BoundaryCondition::label() const {
  switch (kind()) {
    case BcKind::dirichlet: return "dirichlet";
    case BcKind::impedance: return "impedance:" + as_impedance().rho.text();
    case BcKind::transmission: return "transmission:" + format_double(k_minus());
  }
  return {};
}

BoundaryCondition BoundaryCondition::from_label(const std::string& label) {
  if (label == "dirichlet") return dirichlet();
  if (label.rfind("impedance:", 0) == 0) return impedance(Expression::parse(label.substr(10)));
  if (label.rfind("transmission:", 0) == 0)
    return transmission(parse_double(label.substr(13), "transmission"));
  throw DomainError("unknown boundary condition '" + label + "'");
}

Eigen::MatrixXcd assemble_matrix(const BoundaryCondition& bc, const Discretization& disc, double k_plus,
                                 const AssemblyOptions& options) {
  if (!(k_plus > 0.0)) throw DomainError("assemble: k_plus must be > 0");
  const auto& nodes = disc.nodes;
  const auto n = static_cast<Eigen::Index>(nodes.size());
  if (n == 0) throw DomainError("assemble: node list is empty");
  const double h = disc.step;
  const double jump = options.flip_jump_sign ? -1.0 : 1.0;

  // Limit of the K / K' kernels on the diagonal.
  std::vector<double> k_diag(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    k_diag[i] = double_layer_diagonal(disc.profile.slope(nodes[i].s), disc.profile.curvature_term(nodes[i].s));

  switch (bc.kind()) {
    case BcKind::dirichlet: {
      Eigen::MatrixXcd a(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& ni = nodes[static_cast<std::size_t>(i)];
        a(i, i) = -0.5 * jump + k_diag[static_cast<std::size_t>(i)] * ni.weight;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const auto& nj = nodes[static_cast<std::size_t>(j)];
          const auto kij = boundary_kernels(k_plus, ni.point, ni.normal, nj.point, nj.normal);
          a(i, j) = kij.double_layer * nj.weight;
          a(j, i) = kij.adjoint_double * ni.weight;  // K(x_j, y_i) = K'(x_i, y_j)
        }
      }
      return a;
    }
    case BcKind::impedance: {
      const auto& rho = bc.as_impedance().rho;
      std::vector<Complex> coupling(nodes.size());
      for (std::size_t i = 0; i < nodes.size(); ++i) coupling[i] = -I * k_plus * rho(nodes[i].s);
      Eigen::MatrixXcd a(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto ui = static_cast<std::size_t>(i);
        const auto& ni = nodes[ui];
        const Complex s_diag = single_layer_diagonal_factor(k_plus, ni.jacobian, h) * (ni.weight / h);
        a(i, i) = 0.5 * jump + k_diag[ui] * ni.weight + coupling[ui] * s_diag;
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const auto uj = static_cast<std::size_t>(j);
          const auto& nj = nodes[uj];
          const auto kij = boundary_kernels(k_plus, ni.point, ni.normal, nj.point, nj.normal);
          a(i, j) = (kij.adjoint_double + coupling[ui] * kij.single) * nj.weight;
          a(j, i) = (kij.double_layer + coupling[uj] * kij.single) * ni.weight;  // K'(x_j, y_i) = K(x_i, y_j)
        }
      }
      return a;
    }
    case BcKind::transmission: {
      const double k_minus = bc.k_minus();
      Eigen::MatrixXcd a(2 * n, 2 * n);
      const double s_diff_diag = single_difference_diagonal(k_plus, k_minus);
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto& ni = nodes[static_cast<std::size_t>(i)];
        a(i, i) = -1.0 * jump;
        a(n + i, n + i) = 1.0 * jump;
        a(i, n + i) = s_diff_diag * ni.weight;
        a(n + i, i) = hypersingular_difference_diagonal_factor(k_plus, k_minus, ni.jacobian, h) * (ni.weight / h);
        for (Eigen::Index j = i + 1; j < n; ++j) {
          const auto& nj = nodes[static_cast<std::size_t>(j)];
          const auto p = boundary_kernels(k_plus, ni.point, ni.normal, nj.point, nj.normal);
          const auto m = boundary_kernels(k_minus, ni.point, ni.normal, nj.point, nj.normal);
          const Complex dk = p.double_layer - m.double_layer;
          const Complex dkp = p.adjoint_double - m.adjoint_double;
          const Complex ds = p.single - m.single;
          const Complex dt = p.hypersingular - m.hypersingular;
          a(i, j) = dk * nj.weight;
          a(j, i) = dkp * ni.weight;
          a(i, n + j) = ds * nj.weight;
          a(j, n + i) = ds * ni.weight;
          a(n + i, j) = dt * nj.weight;
          a(n + j, i) = dt * ni.weight;
          a(n + i, n + j) = dkp * nj.weight;
          a(n + j, n + i) = dk * ni.weight;
        }
      }
      return a;
    }
  }
  throw DomainError("assemble: invalid boundary condition");
}

BoundarySystem assemble(const BoundaryCondition& bc, const SurfaceProfile& surface, double k_plus,
                        std::vector<SurfaceNode> nodes, const AssemblyOptions& options) {
  if (nodes.empty()) throw DomainError("assemble: node list is empty");
  check_transmission(bc, k_plus, false);
  auto disc = std::make_shared<Discretization>(Discretization{surface, std::move(nodes), 0.0, 0.0, 0.0});
  disc->step = uniform_step(disc->nodes);
  disc->half_width = 0.5 * (disc->nodes.back().s - disc->nodes.front().s);
  for (const auto& node : disc->nodes) {
    if (node.taper < 1.0 && node.s < 0.0) disc->taper_width = std::max(disc->taper_width, node.s + disc->half_width);
  }
  auto lu = std::make_shared<const DenseLu>(assemble_matrix(bc, *disc, k_plus, options));
  return BoundarySystem(bc, k_plus, std::move(disc), std::move(lu));
}

Eigen::VectorXcd boundary_data(const BoundaryCondition& bc, const Discretization& disc, double k_plus,
                               Point2 source) {
  const auto n = static_cast<Eigen::Index>(disc.size());
  Eigen::VectorXcd g(n * bc.blocks());
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& node = disc.nodes[static_cast<std::size_t>(i)];
    const Complex v = phi(k_plus, node.point, source);
    switch (bc.kind()) {
      case BcKind::dirichlet:
        g(i) = -v;
        break;
      case BcKind::impedance: {
        const Complex dn = grad_phi(k_plus, node.point, source).along(node.normal);
        g(i) = -(dn - I * k_plus * bc.as_impedance().rho(node.s) * v);
        break;
      }
      case BcKind::transmission:
        g(i) = -v;
        g(n + i) = -grad_phi(k_plus, node.point, source).along(node.normal);
        break;
    }
  }
  return g;
}

namespace {

void check_source(const Discretization& disc, Point2 source) {
  if (!(source.x2 > disc.profile.height(source.x1)))
    throw DomainError("source must lie strictly above the surface");
}

}  // namespace

DensitySolution solve_density(const BoundarySystem& system, Point2 source) {
  const auto& disc = system.discretization();
  check_source(disc, source);
  const Eigen::VectorXcd g = boundary_data(system.bc(), disc, system.k_plus(), source);
  return {system.discretization_ptr(), system.bc().kind(), system.lu().solve(g), system.factorization_id()};
}

DensityBatch solve_densities(const BoundarySystem& system, std::span<const Point2> sources) {
  const auto& disc = system.discretization();
  const auto rows = static_cast<Eigen::Index>(disc.size()) * system.bc().blocks();
  Eigen::MatrixXcd g(rows, static_cast<Eigen::Index>(sources.size()));
  for (std::size_t j = 0; j < sources.size(); ++j) {
    check_source(disc, sources[j]);
    g.col(static_cast<Eigen::Index>(j)) = boundary_data(system.bc(), disc, system.k_plus(), sources[j]);
  }
  return {system.discretization_ptr(), system.bc().kind(), system.lu().solve(g), system.factorization_id()};
}

namespace {

constexpr double kNearFactor = 6.0;      // refine when closer than this many node steps
constexpr double kBlendInner = 8.0;      // refined part is exact within this many steps
constexpr double kBlendOuter = 16.0;     // and blends to zero by this many steps
constexpr int kInterpPoints = 8;

// Row accumulator for one evaluation point: value and gradient coefficients
// against the stacked density.
struct RowSink {
  Eigen::MatrixXcd& value;
  Eigen::MatrixXcd& d1;
  Eigen::MatrixXcd& d2;
  Eigen::Index row;
  bool gradient;
};

// Adds weight * (layer kernels at y) to the columns of density index j.
void accumulate(const RowSink& sink, BcKind kind, double k, Point2 x, Point2 y, Point2 nu, double weight,
                Eigen::Index j, Eigen::Index n) {
  const KernelSet ker = field_kernels(k, x, y, nu);
  auto add = [&](Eigen::Index col, Complex v, const ComplexGradient& g) {
    sink.value(sink.row, col) += weight * v;
    if (sink.gradient) {
      sink.d1(sink.row, col) += weight * g.d1;
      sink.d2(sink.row, col) += weight * g.d2;
    }
  };
  switch (kind) {
    case BcKind::dirichlet: add(j, ker.double_layer, ker.grad_double); break;
    case BcKind::impedance: add(j, ker.single, ker.grad_single); break;
    case BcKind::transmission:
      add(j, ker.double_layer, ker.grad_double);
      add(n + j, ker.single, ker.grad_single);
      break;
  }
}

// Distance from x to the surface near x1 and the parameter where it is attained.
std::pair<double, double> local_distance(const Discretization& disc, Point2 x) {
  const double span = 3.0 * disc.step;
  constexpr int samples = 193;
  double best = std::numeric_limits<double>::infinity();
  double best_t = x.x1;
  for (int q = 0; q < samples; ++q) {
    const double t = std::clamp(x.x1 - span + 2.0 * span * q / (samples - 1), -disc.half_width, disc.half_width);
    const double d = distance(x, {t, disc.profile.height(t)});
    if (d < best) {
      best = d;
      best_t = t;
    }
  }
  return {best, best_t};
}

void fill_row(const RowSink& sink, BcKind kind, const Discretization& disc, double k, Point2 x) {
  const auto& nodes = disc.nodes;
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const double h = disc.step;
  const double s0 = nodes.front().s;

  const auto [dist, center] = local_distance(disc, x);
  const bool near = dist < kNearFactor * h;

  for (Eigen::Index j = 0; j < n; ++j) {
    const auto& node = nodes[static_cast<std::size_t>(j)];
    double w = node.weight;
    if (near) w *= 1.0 - smooth_cutoff((std::fabs(node.s - center) / h - kBlendInner) / (kBlendOuter - kBlendInner));
    if (w == 0.0) continue;
    accumulate(sink, kind, k, x, node.point, node.normal, w, j, n);
  }
  if (!near) return;

  // Refined trapezoid on the blend window with density g = J chi phi
  // interpolated from the nodes.
  const double lo = std::max(center - kBlendOuter * h, nodes.front().s);
  const double hi = std::min(center + kBlendOuter * h, nodes.back().s);
  const double target = std::min(0.25 * h, 0.25 * dist);
  const int count = std::max(2, static_cast<int>(std::ceil((hi - lo) / target)));
  const double dt = (hi - lo) / count;
  for (int q = 0; q <= count; ++q) {
    const double t = lo + q * dt;
    const double blend = smooth_cutoff((std::fabs(t - center) / h - kBlendInner) / (kBlendOuter - kBlendInner));
    if (blend == 0.0) continue;
    const double end = (q == 0 || q == count) ? 0.5 : 1.0;
    const Point2 y{t, disc.profile.height(t)};
    const Point2 nu = normal_at(disc.profile, t);

    const auto first = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor((t - s0) / h)) - kInterpPoints / 2 + 1,
                                                0, n - kInterpPoints);
    for (Eigen::Index j = first; j < first + kInterpPoints; ++j) {
      double lag = 1.0;
      const double sj = nodes[static_cast<std::size_t>(j)].s;
      for (Eigen::Index m = first; m < first + kInterpPoints; ++m) {
        if (m == j) continue;
        const double sm = nodes[static_cast<std::size_t>(m)].s;
        lag *= (t - sm) / (sj - sm);
      }
      const double g_scale = nodes[static_cast<std::size_t>(j)].weight / h;
      const double w = dt * end * blend * lag * g_scale;
      if (w != 0.0) accumulate(sink, kind, k, x, y, nu, w, j, n);
    }
  }
}

}  // namespace

FieldOperator field_operator(BcKind kind, const Discretization& disc, double k, Side side,
                             std::span<const Point2> points, bool with_gradient, int threads) {
  if (!(k > 0.0)) throw DomainError("field evaluation: wavenumber must be > 0");
  if (disc.size() < static_cast<std::size_t>(kInterpPoints)) throw DomainError("field evaluation: too few nodes");
  for (const auto& x : points) {
    const double f = disc.profile.height(x.x1);
    if (side == Side::upper && !(x.x2 > f))
      throw DomainError("scattered field requested on or below the surface");
    if (side == Side::lower && !(x.x2 < f))
      throw DomainError("transmitted field requested on or above the surface");
  }
  const auto rows = static_cast<Eigen::Index>(points.size());
  const auto cols = static_cast<Eigen::Index>(disc.size()) * (kind == BcKind::transmission ? 2 : 1);
  FieldOperator op;
  op.value = Eigen::MatrixXcd::Zero(rows, cols);
  if (with_gradient) {
    op.d1 = Eigen::MatrixXcd::Zero(rows, cols);
    op.d2 = Eigen::MatrixXcd::Zero(rows, cols);
  }
  parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RowSink sink{op.value, op.d1, op.d2, static_cast<Eigen::Index>(r), with_gradient};
      fill_row(sink, kind, disc, k, points[r]);
    }
  });
  return op;
}

namespace {

void check_density(const DensitySolution& density) {
  if (!density.disc) throw DomainError("density has no discretization");
}

std::vector<Complex> to_vector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<ComplexGradient> to_gradients(const FieldOperator& op, const Eigen::VectorXcd& values) {
  const Eigen::VectorXcd g1 = op.d1 * values;
  const Eigen::VectorXcd g2 = op.d2 * values;
  std::vector<ComplexGradient> out(static_cast<std::size_t>(g1.size()));
  for (Eigen::Index r = 0; r < g1.size(); ++r) out[static_cast<std::size_t>(r)] = {g1(r), g2(r)};
  return out;
}

void check_bc(const DensitySolution& density, const BoundaryCondition& bc) {
  check_density(density);
  if (density.kind != bc.kind()) throw DomainError("density was solved for a different boundary condition");
}

void check_transmitted(const DensitySolution& density) {
  check_density(density);
  if (density.kind != BcKind::transmission)
    throw DomainError("transmitted field requires a transmission density");
}

}  // namespace

std::vector<Complex> scattered_field(const DensitySolution& density, const BoundaryCondition& bc, double k_plus,
                                     std::span<const Point2> points) {
  check_bc(density, bc);
  const auto op = field_operator(bc.kind(), *density.disc, k_plus, Side::upper, points, false);
  return to_vector(op.value * density.values);
}

std::vector<ComplexGradient> scattered_gradient(const DensitySolution& density, const BoundaryCondition& bc,
                                                double k_plus, std::span<const Point2> points) {
  check_bc(density, bc);
  const auto op = field_operator(bc.kind(), *density.disc, k_plus, Side::upper, points, true);
  return to_gradients(op, density.values);
}

std::vector<Complex> transmitted_field(const DensitySolution& density, double k_minus,
                                       std::span<const Point2> points) {
  check_transmitted(density);
  const auto op = field_operator(BcKind::transmission, *density.disc, k_minus, Side::lower, points, false);
  return to_vector(op.value * density.values);
}

std::vector<ComplexGradient> transmitted_gradient(const DensitySolution& density, double k_minus,
                                                  std::span<const Point2> points) {
  check_transmitted(density);
  const auto op = field_operator(BcKind::transmission, *density.disc, k_minus, Side::lower, points, true);
  return to_gradients(op, density.values);
}

OracleValue flat_plane_oracle(double c, double k, Point2 x, Point2 y) {
  if (!(x.x2 > c) || !(y.x2 > c)) throw DomainError("flat_plane_oracle: points must lie above the plane");
  if (x == y) throw DomainError("flat_plane_oracle: x and y coincide");
  const Point2 image = mirror_about(y, c);
  return {-phi(k, x, image), -grad_phi(k, x, image).d2};
}

}  // namespace roughimg
