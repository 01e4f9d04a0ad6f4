#include "verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>

#include "roughimg/cauchy.hpp"
#include "roughimg/parallel.hpp"
#include "roughimg/specfun.hpp"

namespace roughimg::cli {

namespace {

using Clock = std::chrono::steady_clock;

CheckResult timed(const std::string& name, const std::function<CheckResult()>& body) {
  const auto t0 = Clock::now();
  CheckResult r;
  try {
    r = body();
  } catch (const std::exception& e) {
    r.pass = false;
    r.value = INFINITY;
    r.detail = std::string("threw: ") + e.what();
  }
  r.name = name;
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

CheckResult hankel_check() {
  // H_0^(1)(1) = J_0(1) + i Y_0(1)
  const Complex ref(0.76519768655796655145, 0.08825696421567695798);
  CheckResult r;
  r.value = std::abs(hankel1(0, 1.0) - ref) / std::abs(ref);
  r.tolerance = 1e-10;
  const double mag = std::abs(hankel1(0, 100.0));
  const double envelope = std::sqrt(2.0 / (100.0 * pi));
  const bool asym = std::fabs(mag / envelope - 1.0) < 0.01;
  r.pass = r.value < r.tolerance && asym;
  std::ostringstream d;
  d << "|H0(100)| / sqrt(2/(100 pi)) = " << mag / envelope;
  r.detail = d.str();
  return r;
}

CheckResult halfcircle_check() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> kd(0.5, 10.0), ang(0.0, 2.0 * pi), rad(0.0, 1.0);
  CheckResult r;
  r.tolerance = 1e-8;
  for (int c = 0; c < 20; ++c) {
    const double k = kd(rng);
    const double len = rad(rng) * 20.0 / k;
    const double a = ang(rng);
    const Point2 w{len * std::cos(a), len * std::sin(a)};
    const Complex sum = halfcircle_term(k, w, 2048, Hemisphere::lower) + halfcircle_term(k, w, 2048, Hemisphere::upper);
    r.value = std::max(r.value, std::abs(sum - 0.5 * I * bessel_j(0, k * len)));
  }
  r.pass = r.value < r.tolerance;
  r.detail = "20 random cases, k|w| <= 20, M = 2048";
  return r;
}

CheckResult hk_check(bool full) {
  const double k = 5.0, H = 1.0;
  const double lambda = 2.0 * pi / k;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u1(-1.0, 1.0), u2(-0.5, 0.5);
  CheckResult r;
  r.tolerance = 5e-2;
  r.pass = true;
  const double a_big = full ? 200.0 : 100.0;
  std::ostringstream d;
  for (int p = 0; p < 3; ++p) {
    const Point2 y{u1(rng), u2(rng)}, z{u1(rng), u2(rng)};
    auto rel = [&](double A) {
      const int n = static_cast<int>(std::ceil(2.0 * A / lambda * 20.0));
      const auto t = hk_identity_terms(k, y, z, H, A, n, 2048);
      return t.residual() / std::abs(t.rhs);
    };
    const double small = rel(50.0), big = rel(a_big);
    r.value = std::max(r.value, big);
    if (!(big < small)) r.pass = false;
    d << (p ? "; " : "") << std::setprecision(3) << small << " -> " << big;
  }
  r.pass = r.pass && r.value < r.tolerance;
  r.detail = "relative residual A=50 -> A=" + std::to_string(static_cast<int>(a_big)) + ": " + d.str();
  return r;
}

CheckResult flat_oracle_check(bool full, bool flip, int threads) {
  const double k = 10.0, c = 0.8;
  const MeasurementLine line{1.5, full ? 10.0 : 4.0, full ? 25 : 10};
  AssemblyOptions opt;
  opt.flip_jump_sign = flip;
  const auto data = cauchy_data(BoundaryCondition::dirichlet(), flat(c), k, line, {}, nullptr, threads, opt);
  const auto oracle = flat_oracle_data(c, k, line);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < line.count(); ++i) {
    for (int j = 0; j < line.count(); ++j) {
      if (std::fabs(line.point(i).x1) > line.A / 2 || std::fabs(line.point(j).x1) > line.A / 2) continue;
      num += std::norm(data.us(i, j) - oracle.us(i, j)) + std::norm(data.dnus(i, j) - oracle.dnus(i, j));
      den += std::norm(oracle.us(i, j)) + std::norm(oracle.dnus(i, j));
    }
  }
  CheckResult r;
  r.value = std::sqrt(num / den);
  r.tolerance = 1e-2;
  r.pass = r.value < r.tolerance;
  r.detail = flip ? "jump sign deliberately flipped" : "relative L2 over |x1| <= A/2, 40 nodes/wavelength";
  return r;
}

CheckResult reciprocity_check(const BoundaryCondition& bc, const SurfaceProfile& surface, double k, double window) {
  const Point2 x{-1.0, 2.0}, y{1.5, 2.5};
  const auto t = TruncationConfig{}.resolve(window, resolution_wavelength(bc, k));
  const auto system = assemble(bc, surface, k, quadrature_nodes(surface, t.half_width, t.intervals, t.taper_width));
  const Point2 sources[2] = {y, x};
  const auto dens = solve_densities(system, sources);
  const Point2 at_x[1] = {x}, at_y[1] = {y};
  const Complex uxy = scattered_field(dens.column(0), bc, k, at_x)[0];
  const Complex uyx = scattered_field(dens.column(1), bc, k, at_y)[0];
  CheckResult r;
  r.value = std::abs(uxy - uyx) / std::max(std::abs(uxy), std::abs(uyx));
  r.tolerance = 1e-2;
  r.pass = r.value < r.tolerance;
  std::ostringstream d;
  d << surface.label() << ", k+=" << k << ", " << system.discretization().size() << " nodes, rcond "
    << std::setprecision(3) << system.rcond();
  r.detail = d.str();
  return r;
}

}  // namespace

std::vector<CheckResult> run_checks(const VerifyOptions& options) {
  if (options.level != "fast" && options.level != "full")
    throw ConfigError("verify: level must be 'fast' or 'full' (got '" + options.level + "')");
  const bool full = options.level == "full";
  const int threads = resolve_threads(options.threads);
  const double window = full ? 4.0 : 2.5;
  std::vector<CheckResult> out;
  out.push_back(timed("hankel series / asymptotics", hankel_check));
  out.push_back(timed("half-circle sum vs (i/2) J0", halfcircle_check));
  out.push_back(timed("Helmholtz-Kirchhoff residual trend", [&] { return hk_check(full); }));
  out.push_back(timed("flat Dirichlet vs image oracle",
                      [&] { return flat_oracle_check(full, options.inject_sign_flip, threads); }));
  out.push_back(timed("reciprocity dirichlet",
                      [&] { return reciprocity_check(BoundaryCondition::dirichlet(), catalog("gamma1"), 10.0, window); }));
  out.push_back(timed("reciprocity impedance", [&] {
    return reciprocity_check(BoundaryCondition::impedance(Expression::parse("5+exp(2*pi*x1*i)")), catalog("gamma3"),
                             15.0, window);
  }));
  out.push_back(timed("reciprocity transmission", [&] {
    return reciprocity_check(BoundaryCondition::transmission(8.0), catalog("gamma5"), 20.0, window);
  }));
  return out;
}

void print_checks(const std::vector<CheckResult>& checks, std::ostream& out) {
  out << std::left << std::setw(38) << "check" << std::setw(8) << "status" << std::setw(13) << "value"
      << std::setw(11) << "tolerance" << std::setw(9) << "seconds"
      << "detail\n";
  for (const auto& c : checks) {
    std::ostringstream v, t, s;
    v << std::setprecision(3) << std::scientific << c.value;
    t << std::setprecision(1) << std::scientific << c.tolerance;
    s << std::fixed << std::setprecision(2) << c.seconds;
    out << std::left << std::setw(38) << c.name << std::setw(8) << (c.pass ? "PASS" : "FAIL") << std::setw(13)
        << v.str() << std::setw(11) << t.str() << std::setw(9) << s.str() << c.detail << '\n';
  }
}

int cmd_verify(const VerifyOptions& options, std::ostream& log) {
  const auto checks = run_checks(options);
  print_checks(checks, log);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.pass;
  log << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? kSuccess : kNumericalFailure;
}

}  // namespace roughimg::cli
