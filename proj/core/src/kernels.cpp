#include "roughimg/kernels.hpp"

namespace roughimg {

KernelSet field_kernels(double k, Point2 x, Point2 y, Point2 nu_y) {
  const Point2 d = x - y;
  const double r = norm(d);
  if (r == 0.0) throw DomainError("field kernel evaluated at a source node");
  const auto h = hankel1_01(k * r);
  const Complex c = 0.25 * I * k;  // ik/4
  const double d_nu = dot(d, nu_y);

  KernelSet out;
  out.single = 0.25 * I * h.h0;
  const Complex radial = -c * h.h1 / r;
  out.grad_single = {radial * d.x1, radial * d.x2};
  out.double_layer = c * h.h1 * d_nu / r;
  const Complex a = c * (k * r * h.h0 - 2.0 * h.h1) / (r * r * r) * d_nu;
  const Complex b = c * h.h1 / r;
  out.grad_double = {a * d.x1 + b * nu_y.x1, a * d.x2 + b * nu_y.x2};
  return out;
}

BoundaryKernels boundary_kernels(double k, Point2 x, Point2 nu_x, Point2 y, Point2 nu_y) {
  const Point2 d = x - y;
  const double r = norm(d);
  if (r == 0.0) throw DomainError("boundary kernel evaluated on the diagonal");
  const auto h = hankel1_01(k * r);
  const Complex c = 0.25 * I * k;
  const double dx = dot(d, nu_x);
  const double dy = dot(d, nu_y);

  BoundaryKernels out;
  out.single = 0.25 * I * h.h0;
  out.double_layer = c * h.h1 * dy / r;
  out.adjoint_double = -c * h.h1 * dx / r;
  out.hypersingular = c * ((k * r * h.h0 - 2.0 * h.h1) / (r * r * r) * dx * dy + h.h1 / r * dot(nu_x, nu_y));
  return out;
}

double double_layer_diagonal(double slope, double second_derivative) {
  const double j2 = 1.0 + slope * slope;
  return -second_derivative / (4.0 * pi * j2 * std::sqrt(j2));
}

Complex single_layer_diagonal_factor(double k, double jacobian, double h) {
  return h * (0.25 * I - (kEulerGamma + std::log(k * jacobian * h / (4.0 * pi))) / (2.0 * pi));
}

double single_difference_diagonal(double k_plus, double k_minus) {
  return -std::log(k_plus / k_minus) / (2.0 * pi);
}

Complex hypersingular_difference_diagonal_factor(double k_plus, double k_minus, double jacobian, double h) {
  const double kp2 = k_plus * k_plus, km2 = k_minus * k_minus;
  const double a = -(kp2 - km2) / (4.0 * pi);
  const double real_part =
      -(kp2 * (std::log(k_plus / 2.0) + kEulerGamma - 0.5) - km2 * (std::log(k_minus / 2.0) + kEulerGamma - 0.5)) /
      (4.0 * pi);
  const Complex b = Complex(real_part, (kp2 - km2) / 8.0) + a * std::log(jacobian);
  return h * (a * std::log(h / (2.0 * pi)) + b);
}

}  // namespace roughimg
