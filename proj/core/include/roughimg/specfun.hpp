#pragma once

// Bessel and Hankel functions of order 0 and 1 for real argument, the 2D
// Helmholtz fundamental solution, and the half-circle plane-wave sums used by
// the imaging indicator.
//
// Evaluation scheme: power series (in long double) for |t| <= 12, Hankel
// asymptotic expansion for |t| > 12. Both branches agree to ~4e-12 relative
// at the crossover.

#include "roughimg/types.hpp"

namespace roughimg {

inline constexpr double kBesselCrossover = 12.0;

/// J_n(t) for n in {0, 1}; any finite t.
double bessel_j(int n, double t);

/// Y_n(t) for n in {0, 1}; t > 0.
double bessel_y(int n, double t);

/// H_n^(1)(t) = J_n(t) + i Y_n(t) for n in {0, 1}; t > 0.
Complex hankel1(int n, double t);

/// H_0^(1)(t) and H_1^(1)(t) evaluated together (shared series / phases).
struct HankelPair {
  Complex h0;
  Complex h1;
};
HankelPair hankel1_01(double t);

/// Phi_k(x, y) = (i/4) H_0^(1)(k |x - y|). Throws DomainError when x == y.
Complex phi(double k, Point2 x, Point2 y);

/// Gradient of Phi_k(x, y) with respect to x:
///   -(i k / 4) H_1^(1)(k r) (x - y) / r.
ComplexGradient grad_phi(double k, Point2 x, Point2 y);

enum class Hemisphere { lower, upper };

/// (i dtheta / 4 pi) * sum_m exp(i k d_m . w) with dtheta = pi / M.
///
/// lower: d_m = (cos t_m, sin t_m), t_m = -pi + m dtheta, m = 0..M. This is
///   the closed (M+1)-point rule used inside the indicator, each point carrying
///   the full weight dtheta, so it has an O(dtheta) endpoint bias; at w = 0 it
///   returns (i/4)(M+1)/M.
/// upper: t_m = m dtheta, m = 1..M-1 (the open complement). lower + upper is
///   the 2M-point periodic trapezoid rule on the whole circle, which equals
///   (i/2) J_0(k|w|) to rounding once M >> k|w|.
Complex halfcircle_term(double k, Point2 w, int M, Hemisphere hemisphere);

/// Left and right sides of the line identity
///   int_{Gamma_H} (d_nu Phi(x,y) conj Phi(x,z) - Phi(x,y) conj d_nu Phi(x,z)) ds(x)
///     = (i / 4 pi) int_{S^1_+} exp(i k xhat . (z - y)) ds(xhat)
/// with nu = (0, 1). The left side is a composite trapezoid over
/// [-A, A] x {H} with n intervals; the right side is halfcircle_term(upper).
struct HkIdentityTerms {
  Complex lhs;
  Complex rhs;
  double residual() const { return std::abs(lhs - rhs); }
};
HkIdentityTerms hk_identity_terms(double k, Point2 y, Point2 z, double H, double A, int n, int M);

/// |lhs - rhs| of hk_identity_terms. Requires y2 < H, z2 < H, and
/// max(|y1|, |z1|) < A.
double hk_identity_residual(double k, Point2 y, Point2 z, double H, double A, int n, int M);

}  // namespace roughimg
