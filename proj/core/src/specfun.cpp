#include "roughimg/specfun.hpp"

#include <array>
#include <string>

namespace roughimg {

namespace {

constexpr long double kEulerGamma = 0.577215664901532860606512090082402431L;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

struct SeriesValues {
  long double j0, j1, y0, y1;
};

// Ascending series. Long double keeps the cancellation near t = 12 (largest
// term ~1e4) below 1e-14 in the final double.
SeriesValues small_argument_series(double t, bool want_y) {
  const long double x = std::fabs(static_cast<long double>(t));
  const long double q = x * x / 4.0L;

  long double j0 = 0.0L, j1s = 0.0L, y0s = 0.0L, y1s = 0.0L;
  long double term0 = 1.0L;  // (-q)^p / (p!)^2
  long double term1 = 1.0L;  // (-q)^p / (p! (p+1)!)
  long double harmonic = 0.0L;  // H_p
  for (int p = 0; p < 90; ++p) {
    j0 += term0;
    j1s += term1;
    if (want_y) {
      // (-1)^{p+1} H_p q^p / (p!)^2 == -H_p * term0
      y0s -= harmonic * term0;
      const long double psi_sum = -2.0L * kEulerGamma + 2.0L * harmonic + 1.0L / (p + 1);
      y1s += psi_sum * term1;
    }
    if (p > 2 && std::fabs(term0) < 1e-24L && static_cast<long double>(p) > q) break;
    harmonic += 1.0L / (p + 1);
    term0 *= -q / ((p + 1.0L) * (p + 1.0L));
    term1 *= -q / ((p + 1.0L) * (p + 2.0L));
  }
  const long double half = x / 2.0L;
  const long double j1 = half * j1s;
  SeriesValues out{j0, j1, 0.0L, 0.0L};
  if (want_y) {
    const long double log_half = std::log(half);
    out.y0 = (2.0L / kPiL) * ((log_half + kEulerGamma) * j0 + y0s);
    out.y1 = (2.0L / kPiL) * log_half * j1 - 2.0L / (kPiL * x) - (1.0L / kPiL) * half * y1s;
  }
  return out;
}

struct AsymptoticValues {
  double j, y;
};

// Hankel's expansion J = A (P cos chi - Q sin chi), Y = A (P sin chi + Q cos chi),
// truncated at the smallest term (at least 8 corrections).
AsymptoticValues large_argument(int n, double t) {
  const double mu = 4.0 * n * n;
  double p_sum = 0.0, q_sum = 0.0;
  double a = 1.0;
  double previous = 1e300;
  for (int k = 0; k < 80; ++k) {
    const double term = a;  // a_k / t^k
    const double mag = std::fabs(term);
    if (k >= 8 && (mag > previous || mag < 1e-18)) break;
    switch (k % 4) {
      case 0: p_sum += term; break;
      case 1: q_sum += term; break;
      case 2: p_sum -= term; break;
      case 3: q_sum -= term; break;
    }
    previous = mag;
    const double odd = 2.0 * k + 1.0;
    a *= (mu - odd * odd) / ((k + 1.0) * 8.0 * t);
  }
  // chi = t - (n/2 + 1/4) pi, expanded so the large t is only seen by sin/cos.
  const double s = std::sin(t), c = std::cos(t);
  constexpr double r = std::numbers::sqrt2 / 2.0;
  double cos_chi, sin_chi;
  if (n == 0) {
    cos_chi = r * (c + s);
    sin_chi = r * (s - c);
  } else {
    cos_chi = r * (s - c);
    sin_chi = -r * (c + s);
  }
  const double amp = std::sqrt(2.0 / (pi * t));
  return {amp * (p_sum * cos_chi - q_sum * sin_chi), amp * (p_sum * sin_chi + q_sum * cos_chi)};
}

void check_order(int n) {
  if (n != 0 && n != 1) throw DomainError("bessel order must be 0 or 1, got " + std::to_string(n));
}

void check_positive(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " + std::to_string(t));
}

}  // namespace

double bessel_j(int n, double t) {
  check_order(n);
  if (!std::isfinite(t)) throw DomainError("bessel_j: argument must be finite");
  const double x = std::fabs(t);
  double value;
  if (x <= kBesselCrossover) {
    const auto s = small_argument_series(x, false);
    value = static_cast<double>(n == 0 ? s.j0 : s.j1);
  } else {
    value = large_argument(n, x).j;
  }
  return (n == 1 && t < 0.0) ? -value : value;
}

double bessel_y(int n, double t) {
  check_order(n);
  check_positive(t, "bessel_y");
  if (t <= kBesselCrossover) {
    const auto s = small_argument_series(t, true);
    return static_cast<double>(n == 0 ? s.y0 : s.y1);
  }
  return large_argument(n, t).y;
}

Complex hankel1(int n, double t) {
  check_order(n);
  check_positive(t, "hankel1");
  if (t <= kBesselCrossover) {
    const auto s = small_argument_series(t, true);
    return n == 0 ? Complex(static_cast<double>(s.j0), static_cast<double>(s.y0))
                  : Complex(static_cast<double>(s.j1), static_cast<double>(s.y1));
  }
  const auto v = large_argument(n, t);
  return {v.j, v.y};
}

HankelPair hankel1_01(double t) {
  check_positive(t, "hankel1");
  if (t <= kBesselCrossover) {
    const auto s = small_argument_series(t, true);
    return {Complex(static_cast<double>(s.j0), static_cast<double>(s.y0)),
            Complex(static_cast<double>(s.j1), static_cast<double>(s.y1))};
  }
  const auto v0 = large_argument(0, t);
  const auto v1 = large_argument(1, t);
  return {Complex(v0.j, v0.y), Complex(v1.j, v1.y)};
}

Complex phi(double k, Point2 x, Point2 y) {
  const double r = distance(x, y);
  if (r == 0.0) throw DomainError("phi: x and y coincide (singular point)");
  return 0.25 * I * hankel1(0, k * r);
}

ComplexGradient grad_phi(double k, Point2 x, Point2 y) {
  const Point2 d = x - y;
  const double r = norm(d);
  if (r == 0.0) throw DomainError("grad_phi: x and y coincide (singular point)");
  const Complex radial = -0.25 * I * k * hankel1(1, k * r) / r;
  return {radial * d.x1, radial * d.x2};
}

Complex halfcircle_term(double k, Point2 w, int M, Hemisphere hemisphere) {
  if (M < 2) throw DomainError("halfcircle_term: M must be >= 2");
  const double dtheta = pi / M;
  Complex sum = 0.0;
  const int first = hemisphere == Hemisphere::lower ? 0 : 1;
  const int last = hemisphere == Hemisphere::lower ? M : M - 1;
  const double start = hemisphere == Hemisphere::lower ? -pi : 0.0;
  for (int m = first; m <= last; ++m) {
    const double theta = start + m * dtheta;
    const double phase = k * (std::cos(theta) * w.x1 + std::sin(theta) * w.x2);
    sum += Complex(std::cos(phase), std::sin(phase));
  }
  return I * (dtheta / (4.0 * pi)) * sum;
}

HkIdentityTerms hk_identity_terms(double k, Point2 y, Point2 z, double H, double A, int n, int M) {
  if (!(y.x2 < H) || !(z.x2 < H))
    throw DomainError("hk_identity: both points must lie strictly below the line x2 = H");
  if (!(A > std::max(std::fabs(y.x1), std::fabs(z.x1))))
    throw DomainError("hk_identity: half-width A must enclose both points");
  if (n < 2) throw DomainError("hk_identity: need at least 2 intervals");
  if (!(k > 0.0)) throw DomainError("hk_identity: wavenumber must be > 0");

  const double step = 2.0 * A / n;
  Complex lhs = 0.0;
  for (int m = 0; m <= n; ++m) {
    const Point2 x{-A + m * step, H};
    const double weight = (m == 0 || m == n) ? 0.5 * step : step;
    const Complex phi_y = phi(k, x, y);
    const Complex phi_z = phi(k, x, z);
    const Complex dphi_y = grad_phi(k, x, y).d2;
    const Complex dphi_z = grad_phi(k, x, z).d2;
    lhs += weight * (dphi_y * std::conj(phi_z) - phi_y * std::conj(dphi_z));
  }
  return {lhs, halfcircle_term(k, z - y, M, Hemisphere::upper)};
}

double hk_identity_residual(double k, Point2 y, Point2 z, double H, double A, int n, int M) {
  return hk_identity_terms(k, y, z, H, A, n, M).residual();
}

}  // namespace roughimg
