#include "roughimg/surfaces.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>

namespace roughimg {

SurfaceProfile::SurfaceProfile(std::string label, Fn f, Fn df, double c1, double c2)
    : label_(std::move(label)), f_(std::move(f)), df_(std::move(df)), c1_(c1), c2_(c2) {}

double SurfaceProfile::curvature_term(double s) const {
  constexpr double h = 1e-5;
  return (df_(s + h) - df_(s - h)) / (2.0 * h);
}

SurfaceProfile SurfaceProfile::with_bounds(double c1, double c2) const {
  SurfaceProfile copy = *this;
  copy.c1_ = c1;
  copy.c2_ = c2;
  return copy;
}

double SurfaceProfile::max_height(double a, double b, int samples) const {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) best = std::max(best, f_(a + (b - a) * i / (samples - 1)));
  return best;
}

double SurfaceProfile::min_height(double a, double b, int samples) const {
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < samples; ++i) best = std::min(best, f_(a + (b - a) * i / (samples - 1)));
  return best;
}

SurfaceProfile flat(double height) {
  if (!(height > 0.0) || !std::isfinite(height))
    throw DomainError("flat surface height must be finite and > 0");
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, height);
  std::string label = "flat:" + std::string(buf, end);
  return SurfaceProfile(std::move(label), [height](double) { return height; },
                        [](double) { return 0.0; });
}

namespace {

std::optional<double> parse_flat_height(const std::string& name) {
  std::string rest;
  if (name.rfind("flat:", 0) == 0) {
    rest = name.substr(5);
  } else if (name.rfind("flat(", 0) == 0 && name.back() == ')') {
    rest = name.substr(5, name.size() - 6);
  } else {
    return std::nullopt;
  }
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc() || ptr != rest.data() + rest.size())
    throw DomainError("flat surface: cannot parse height '" + rest + "'");
  return value;
}

}  // namespace

SurfaceProfile catalog(const std::string& name) {
  using std::cos;
  using std::exp;
  using std::sin;

  if (auto height = parse_flat_height(name)) return flat(*height);

  if (name == "gamma1") {
    return SurfaceProfile(
        name, [](double x) { return 0.8 + 0.1 * sin(2 * pi * x) + 0.1 * sin(pi * x); },
        [](double x) { return 0.2 * pi * cos(2 * pi * x) + 0.1 * pi * cos(pi * x); });
  }
  if (name == "gamma2") {
    return SurfaceProfile(
        name,
        [](double x) { return 0.8 + 0.025 * sin(5 * pi * (x - 1)) + 0.1 * sin(0.5 * pi * (x - 1)); },
        [](double x) {
          return 0.125 * pi * cos(5 * pi * (x - 1)) + 0.05 * pi * cos(0.5 * pi * (x - 1));
        });
  }
  if (name == "gamma3") {
    return SurfaceProfile(
        name, [](double x) { return 0.8 + 0.16 * sin(pi * x); },
        [](double x) { return 0.16 * pi * cos(pi * x); });
  }
  if (name == "gamma4") {
    return SurfaceProfile(
        name,
        [](double x) {
          const double a = 0.3 * x - 0.5, b = 0.3 * x + 0.6;
          return 0.8 + 0.1 * exp(-25 * a * a) + 0.2 * exp(-49 * b * b) - 0.25 * exp(-8 * x * x);
        },
        [](double x) {
          const double a = 0.3 * x - 0.5, b = 0.3 * x + 0.6;
          return 0.1 * exp(-25 * a * a) * (-50 * a * 0.3) + 0.2 * exp(-49 * b * b) * (-98 * b * 0.3) -
                 0.25 * exp(-8 * x * x) * (-16 * x);
        });
  }
  if (name == "gamma5") {
    return SurfaceProfile(
        name, [](double x) { return 0.8 + 0.3 * sin(0.7 * pi * x) * exp(-0.4 * x * x); },
        [](double x) {
          return 0.3 * exp(-0.4 * x * x) * (0.7 * pi * cos(0.7 * pi * x) - 0.8 * x * sin(0.7 * pi * x));
        });
  }
  if (name == "gamma6") {
    // The slope grows like |x1| (the exponent oscillates as sin(1.2 x1^2)),
    // so band_check fails on wide windows for the default c2.
    return SurfaceProfile(
        name, [](double x) { return 0.8 + 0.1 * sin(0.4 * pi * x) * exp(-sin(1.2 * x * x)); },
        [](double x) {
          const double e = exp(-sin(1.2 * x * x));
          return 0.1 * e * (0.4 * pi * cos(0.4 * pi * x) - sin(0.4 * pi * x) * cos(1.2 * x * x) * 2.4 * x);
        });
  }
  throw DomainError("unknown surface '" + name + "' (expected gamma1..gamma6 or flat:<height>)");
}

Point2 normal_at(const SurfaceProfile& profile, double s) {
  const double d = profile.slope(s);
  const double j = std::sqrt(1.0 + d * d);
  return {d / j, -1.0 / j};
}

double taper_weight(double s, double half_width, double taper_width) {
  const double from_end = half_width - std::fabs(s);
  if (from_end <= 0.0) return 0.0;
  if (taper_width <= 0.0 || from_end >= taper_width) return 1.0;
  const double u = from_end / taper_width;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

std::vector<SurfaceNode> quadrature_nodes(const SurfaceProfile& profile, double half_width, int n,
                                          double taper_width) {
  if (!(half_width > 0.0)) throw DomainError("quadrature_nodes: half-width must be > 0");
  if (n < 2 || n % 2 != 0) throw DomainError("quadrature_nodes: interval count must be even and >= 2");
  if (!(taper_width >= 0.0) || !(taper_width < half_width))
    throw DomainError("quadrature_nodes: taper width must lie in [0, half-width)");

  const double step = 2.0 * half_width / n;
  std::vector<SurfaceNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) {
    // Keep the grid exactly symmetric: the m-th and (n-m)-th nodes are negatives.
    const double s = m < n / 2 ? -half_width + m * step : (m == n / 2 ? 0.0 : half_width - (n - m) * step);
    SurfaceNode node;
    node.s = s;
    node.point = {s, profile.height(s)};
    node.normal = normal_at(profile, s);
    const double d = profile.slope(s);
    node.jacobian = std::sqrt(1.0 + d * d);
    // With a taper the end weights are zero anyway; without one use the
    // trapezoid half weights.
    node.taper = taper_width > 0.0 ? taper_weight(s, half_width, taper_width) : 1.0;
    const double end_factor = (m == 0 || m == n) ? 0.5 : 1.0;
    node.weight = step * node.jacobian * node.taper * end_factor;
    nodes.push_back(node);
  }
  return nodes;
}

bool band_check(const SurfaceProfile& profile, double half_width, int grid) {
  if (grid < 100) throw DomainError("band_check: grid must be >= 100");
  for (int i = 0; i < grid; ++i) {
    const double s = -half_width + 2.0 * half_width * i / (grid - 1);
    const double f = profile.height(s);
    const double d = profile.slope(s);
    if (!(f >= profile.c1())) return false;
    if (!(std::fabs(f) + std::fabs(d) <= profile.c2())) return false;
  }
  return true;
}

}  // namespace roughimg
