#pragma once

// Free-space layer-potential kernels of the 2D Helmholtz operator, all built
// from one H_0^(1), H_1^(1) evaluation. Notation: d = x - y, r = |d|,
// nu_x / nu_y unit normals at the target / source point.

#include "roughimg/specfun.hpp"

namespace roughimg {

struct KernelSet {
  Complex single;          // Phi(x, y)
  ComplexGradient grad_single;   // grad_x Phi
  Complex double_layer;    // d Phi / d nu(y)
  ComplexGradient grad_double;   // grad_x (d Phi / d nu(y))
};

/// Kernels for a target x off the boundary (no target normal needed).
KernelSet field_kernels(double k, Point2 x, Point2 y, Point2 nu_y);

/// Boundary-operator kernels between two distinct boundary points.
struct BoundaryKernels {
  Complex single;          // S
  Complex double_layer;    // K:  d Phi / d nu(y)
  Complex adjoint_double;  // K': d Phi / d nu(x)
  Complex hypersingular;   // T:  d^2 Phi / d nu(x) d nu(y)
};
BoundaryKernels boundary_kernels(double k, Point2 x, Point2 nu_x, Point2 y, Point2 nu_y);

/// Limit of the K and K' kernels as y -> x along the graph x2 = f(x1):
/// -f'' / (4 pi (1 + f'^2)^{3/2}). Identical for both kernels.
double double_layer_diagonal(double slope, double second_derivative);

/// Diagonal Nystrom weight for the log-singular S kernel on a uniform
/// parameter grid of step h (corrected trapezoid rule with O(h^3) error),
/// divided by the node's jacobian * taper:
///   h [ i/4 - (gamma + log(k J h / (4 pi))) / (2 pi) ].
Complex single_layer_diagonal_factor(double k, double jacobian, double h);

/// Diagonal value of the S^+ - S^- kernel: -log(k_plus / k_minus) / (2 pi).
double single_difference_diagonal(double k_plus, double k_minus);

/// Diagonal Nystrom factor (per unit jacobian * taper) for the T^+ - T^-
/// kernel, which behaves like -(k+^2 - k-^2)/(4 pi) log|s - t| + bounded:
///   h [ a log(h / 2 pi) + b ], a = -(k+^2 - k-^2)/(4 pi),
///   b = i (k+^2 - k-^2)/8 - sum_{+,-} (+/-) k^2 (log(k/2) + gamma - 1/2)/(4 pi) + a log J.
Complex hypersingular_difference_diagonal_factor(double k_plus, double k_minus, double jacobian, double h);

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

}  // namespace roughimg
