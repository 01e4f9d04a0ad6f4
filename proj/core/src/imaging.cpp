#include "roughimg/imaging.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "roughimg/parallel.hpp"
#include "roughimg/specfun.hpp"

namespace roughimg {

void ImagingGrid::validate() const {
  if (!(x2_min > 0.0)) throw DomainError("imaging grid: x2_min must be > 0");
  if (!(x1_min <= x1_max) || !(x2_min <= x2_max)) throw DomainError("imaging grid: min must not exceed max");
  if (!std::isfinite(x1_min) || !std::isfinite(x1_max) || !std::isfinite(x2_max))
    throw DomainError("imaging grid: bounds must be finite");
  if (nx1 < 1 || nx2 < 1) throw DomainError("imaging grid: resolutions must be >= 1");
}

namespace {

double parse_number(std::string_view text, const std::string& spec) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw DomainError("grid spec '" + spec + "': bad number '" + std::string(text) + "'");
  return v;
}

void parse_axis(std::string_view axis, const std::string& spec, double& lo, double& hi, int& count) {
  const auto a = axis.find(':');
  const auto b = a == std::string_view::npos ? a : axis.find(':', a + 1);
  if (b == std::string_view::npos) throw DomainError("grid spec '" + spec + "': expected min:max:count");
  lo = parse_number(axis.substr(0, a), spec);
  hi = parse_number(axis.substr(a + 1, b - a - 1), spec);
  const double n = parse_number(axis.substr(b + 1), spec);
  if (n != std::floor(n) || n < 1 || n > 1e6) throw DomainError("grid spec '" + spec + "': bad count");
  count = static_cast<int>(n);
}

}  // namespace

ImagingGrid ImagingGrid::parse(const std::string& spec) {
  const auto comma = spec.find(',');
  if (comma == std::string::npos) throw DomainError("grid spec '" + spec + "': expected two comma-separated axes");
  ImagingGrid g;
  parse_axis(std::string_view(spec).substr(0, comma), spec, g.x1_min, g.x1_max, g.nx1);
  parse_axis(std::string_view(spec).substr(comma + 1), spec, g.x2_min, g.x2_max, g.nx2);
  g.validate();
  return g;
}

std::string ImagingGrid::to_string() const {
  std::ostringstream out;
  out.precision(17);
  out << x1_min << ':' << x1_max << ':' << nx1 << ',' << x2_min << ':' << x2_max << ':' << nx2;
  return out.str();
}

namespace {

void check_point(Point2 z, const CauchyDataSet& data) {
  if (!(z.x2 < data.line.H)) throw DomainError("indicator: sampling point must lie below the measurement line");
}

void check_data(const CauchyDataSet& data, int M) {
  data.validate();
  if (M < 2) throw DomainError("indicator: M must be >= 2");
  if (!(data.k_plus > 0.0)) throw DomainError("indicator: dataset has no wavenumber");
}

}  // namespace

double indicator(Point2 z, const CauchyDataSet& data, int M) {
  check_data(data, M);
  check_point(z, data);
  const auto& line = data.line;
  const double h = line.h();
  const double k = data.k_plus;
  const int count = line.count();
  std::vector<Complex> conj_phi(static_cast<std::size_t>(count));
  std::vector<Complex> conj_dphi(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    conj_phi[static_cast<std::size_t>(i)] = std::conj(phi(k, line.point(i), z));
    conj_dphi[static_cast<std::size_t>(i)] = std::conj(grad_phi(k, line.point(i), z).d2);
  }
  double total = 0.0;
  for (int j = 0; j < count; ++j) {
    Complex inner = 0.0;
    for (int i = 0; i < count; ++i) {
      inner += data.dnus(i, j) * conj_phi[static_cast<std::size_t>(i)] -
               data.us(i, j) * conj_dphi[static_cast<std::size_t>(i)];
    }
    const Point2 w = mirror(line.point(j)) - mirror(z);
    total += std::norm(h * inner - halfcircle_term(k, w, M, Hemisphere::lower));
  }
  return h * total;
}

namespace {

// Shared pieces of the matrix-structured evaluation.
struct SweepPlan {
  const CauchyDataSet& data;
  int M;
  double h;
  double k;
  Eigen::VectorXd cos_m;   // d_m = (cos, sin) of theta_m = -pi + m dtheta
  Eigen::VectorXd sin_m;
  Eigen::MatrixXcd source_phase;  // (M+1) x S: exp(i k cos_m y1_j)

  SweepPlan(const CauchyDataSet& d, int m) : data(d), M(m), h(d.line.h()), k(d.k_plus) {
    const double dtheta = pi / M;
    cos_m.resize(M + 1);
    sin_m.resize(M + 1);
    for (int q = 0; q <= M; ++q) {
      const double theta = -pi + q * dtheta;
      cos_m(q) = std::cos(theta);
      sin_m(q) = std::sin(theta);
    }
    const int count = d.line.count();
    source_phase.resize(M + 1, count);
    for (int j = 0; j < count; ++j) {
      const double y1 = d.line.point(j).x1;
      for (int q = 0; q <= M; ++q) source_phase(q, j) = std::polar(1.0, k * cos_m(q) * y1);
    }
  }

  // I_A for a batch of points: B = h (Pbar dnus - Qbar us), C = c W E,
  // I = h * rowwise sum |B - C|^2.
  void evaluate(std::span<const Point2> points, double* out) const {
    const auto nz = static_cast<Eigen::Index>(points.size());
    const int count = data.line.count();
    Eigen::MatrixXcd pbar(nz, count), qbar(nz, count);
    Eigen::MatrixXcd w(nz, M + 1);
    const double H = data.line.H;
    for (Eigen::Index r = 0; r < nz; ++r) {
      const Point2 z = points[static_cast<std::size_t>(r)];
      for (int i = 0; i < count; ++i) {
        const Point2 x = data.line.point(i);
        pbar(r, i) = std::conj(phi(k, x, z));
        qbar(r, i) = std::conj(grad_phi(k, x, z).d2);
      }
      for (int q = 0; q <= M; ++q) w(r, q) = std::polar(1.0, k * (-cos_m(q) * z.x1 + sin_m(q) * (z.x2 - H)));
    }
    const Complex scale = I * ((pi / M) / (4.0 * pi));
    Eigen::MatrixXcd bracket = h * (pbar * data.dnus - qbar * data.us);
    bracket.noalias() -= scale * (w * source_phase);
    for (Eigen::Index r = 0; r < nz; ++r) out[r] = h * bracket.row(r).cwiseAbs2().sum();
  }
};

}  // namespace

std::vector<double> indicator_values(std::span<const Point2> points, const CauchyDataSet& data, int M,
                                     int threads) {
  check_data(data, M);
  for (const auto& z : points) check_point(z, data);
  const SweepPlan plan(data, M);
  std::vector<double> out(points.size());
  constexpr std::size_t kBatch = 64;
  const std::size_t batches = (points.size() + kBatch - 1) / kBatch;
  parallel_for(batches, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const std::size_t lo = b * kBatch;
      const std::size_t hi = std::min(points.size(), lo + kBatch);
      plan.evaluate(points.subspan(lo, hi - lo), out.data() + lo);
    }
  });
  return out;
}

ImagingResult sweep(const ImagingGrid& grid, const CauchyDataSet& data, int M, int threads) {
  grid.validate();
  check_data(data, M);
  if (!(grid.x2_max < data.line.H)) throw DomainError("sweep: grid must lie below the measurement line");
  const SweepPlan plan(data, M);

  ImagingResult result;
  result.grid = grid;
  result.values.resize(grid.nx2, grid.nx1);
  parallel_for(static_cast<std::size_t>(grid.nx2), threads, [&](std::size_t begin, std::size_t end) {
    std::vector<Point2> row(static_cast<std::size_t>(grid.nx1));
    std::vector<double> values(row.size());
    for (std::size_t r = begin; r < end; ++r) {
      for (int c = 0; c < grid.nx1; ++c) row[static_cast<std::size_t>(c)] = {grid.x1(c), grid.x2(static_cast<int>(r))};
      plan.evaluate(row, values.data());
      for (int c = 0; c < grid.nx1; ++c) result.values(static_cast<Eigen::Index>(r), c) = values[static_cast<std::size_t>(c)];
    }
  });
  result.extracted = extract_profile(result);
  return result;
}

ExtractedProfile extract_profile(const ImagingResult& result) {
  const auto& g = result.grid;
  const auto& v = result.values;
  if (v.rows() != g.nx2 || v.cols() != g.nx1) throw DomainError("extract_profile: values do not match the grid");
  ExtractedProfile out;
  const double global = v.size() > 0 ? v.maxCoeff() : 0.0;
  for (int c = 0; c < g.nx1; ++c) {
    int best = 0;
    for (int r = 1; r < g.nx2; ++r) {
      if (v(r, c) > v(best, c)) best = r;
    }
    out.x1.push_back(g.x1(c));
    out.height.push_back(g.x2(best));
    out.peak.push_back(v(best, c));
    out.reliable.push_back(global > 0.0 && v(best, c) >= kReliableFraction * global);
  }
  return out;
}

ErrorMetrics error_metrics(const ExtractedProfile& extracted, const SurfaceProfile& truth, double lo, double hi) {
  if (!(lo <= hi)) throw DomainError("error_metrics: empty window");
  ErrorMetrics m;
  double sum = 0.0;
  for (std::size_t c = 0; c < extracted.x1.size(); ++c) {
    const double x1 = extracted.x1[c];
    if (x1 < lo || x1 > hi || !extracted.reliable[c]) continue;
    const double err = std::fabs(extracted.height[c] - truth.height(x1));
    sum += err;
    m.max_abs = std::max(m.max_abs, err);
    ++m.columns;
  }
  if (m.columns == 0) throw DomainError("error_metrics: no reliable columns inside the window");
  m.mean_abs = sum / m.columns;
  return m;
}

}  // namespace roughimg
