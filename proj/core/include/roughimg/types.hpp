#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace roughimg {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr Complex I{0.0, 1.0};

/// A point (x1, x2) in the plane; x2 is the height coordinate.
struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;

  constexpr Point2 operator+(Point2 o) const { return {x1 + o.x1, x2 + o.x2}; }
  constexpr Point2 operator-(Point2 o) const { return {x1 - o.x1, x2 - o.x2}; }
  constexpr Point2 operator*(double s) const { return {x1 * s, x2 * s}; }
  constexpr bool operator==(const Point2&) const = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
inline double norm(Point2 a) { return std::hypot(a.x1, a.x2); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Reflection across the line x2 = 0.
constexpr Point2 mirror(Point2 p) { return {p.x1, -p.x2}; }
/// Reflection across the line x2 = a.
constexpr Point2 mirror_about(Point2 p, double a) { return {p.x1, 2.0 * a - p.x2}; }

/// Gradient of a complex scalar field with respect to (x1, x2).
struct ComplexGradient {
  Complex d1;
  Complex d2;

  Complex along(Point2 direction) const { return d1 * direction.x1 + d2 * direction.x2; }
};

// Error hierarchy. Everything derives from std::runtime_error or
// std::domain_error so callers can catch broadly.

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public NumericalError {
 public:
  SingularMatrixError(const std::string& what, double rcond)
      : NumericalError(what), rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace roughimg
