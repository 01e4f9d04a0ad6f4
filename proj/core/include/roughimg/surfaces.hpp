#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "roughimg/types.hpp"

namespace roughimg {

/// Height profile x2 = f(x1) of a rough surface together with its analytic
/// derivative and the band B(c1, c2) it is expected to live in.
class SurfaceProfile {
 public:
  using Fn = std::function<double(double)>;

  SurfaceProfile(std::string label, Fn f, Fn df, double c1 = 0.3, double c2 = 3.0);

  double height(double s) const { return f_(s); }
  double slope(double s) const { return df_(s); }
  /// Second derivative by central difference of the slope (step 1e-5).
  double curvature_term(double s) const;

  const std::string& label() const { return label_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }

  SurfaceProfile with_bounds(double c1, double c2) const;

  /// Largest / smallest height sampled on [a, b] with `samples` points.
  double max_height(double a, double b, int samples = 4001) const;
  double min_height(double a, double b, int samples = 4001) const;

 private:
  std::string label_;
  Fn f_;
  Fn df_;
  double c1_;
  double c2_;
};

/// Catalog lookup: "gamma1" .. "gamma6", or "flat:<height>" / "flat(<height>)".
/// Throws DomainError for unknown names.
SurfaceProfile catalog(const std::string& name);
SurfaceProfile flat(double height);

/// Unit normal pointing out of the upper region (downward):
/// (f'(s), -1) / sqrt(1 + f'(s)^2).
Point2 normal_at(const SurfaceProfile& profile, double s);

struct SurfaceNode {
  double s = 0.0;
  Point2 point;
  Point2 normal;
  double jacobian = 1.0;  // sqrt(1 + f'^2)
  double taper = 1.0;     // chi(s) in [0, 1]
  double weight = 0.0;    // step * jacobian * taper (trapezoid end weights halved)
};

/// Quintic smoothstep 6u^5 - 15u^4 + 10u^3 evaluated at the distance from the
/// nearest end of [-half_width, half_width] divided by taper_width.
double taper_weight(double s, double half_width, double taper_width);

/// Uniform nodes s_m = -A_f + m (2 A_f / n), m = 0..n (n intervals, n+1 nodes).
/// Requires n >= 2 even and 0 <= taper_width < A_f.
std::vector<SurfaceNode> quadrature_nodes(const SurfaceProfile& profile, double half_width, int n,
                                          double taper_width);

/// True iff f >= c1 and |f| + |f'| <= c2 at `grid` uniform samples of
/// [-half_width, half_width]. Requires grid >= 100.
bool band_check(const SurfaceProfile& profile, double half_width, int grid);

}  // namespace roughimg
