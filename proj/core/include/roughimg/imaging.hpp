#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughimg/cauchy.hpp"
#include "roughimg/surfaces.hpp"

namespace roughimg {

/// Sampling mesh over [x1_min, x1_max] x [x2_min, x2_max]. Row r has height
/// x2(r), column c has abscissa x1(c); a resolution of 1 samples the minimum.
struct ImagingGrid {
  double x1_min = -5.0;
  double x1_max = 5.0;
  double x2_min = 0.3;
  double x2_max = 1.3;
  int nx1 = 201;
  int nx2 = 101;

  double x1(int c) const { return nx1 > 1 ? x1_min + (x1_max - x1_min) * c / (nx1 - 1) : x1_min; }
  double x2(int r) const { return nx2 > 1 ? x2_min + (x2_max - x2_min) * r / (nx2 - 1) : x2_min; }
  double dx1() const { return nx1 > 1 ? (x1_max - x1_min) / (nx1 - 1) : 0.0; }
  double dx2() const { return nx2 > 1 ? (x2_max - x2_min) / (nx2 - 1) : 0.0; }

  /// Throws DomainError unless x2_min > 0, min <= max, and nx1, nx2 >= 1.
  void validate() const;

  /// "x1min:x1max:nx1,x2min:x2max:nx2".
  static ImagingGrid parse(const std::string& spec);
  std::string to_string() const;

  bool operator==(const ImagingGrid&) const = default;
};

struct ExtractedProfile {
  std::vector<double> x1;
  std::vector<double> height;      // x2 of the column maximum
  std::vector<double> peak;        // the maximum itself
  std::vector<bool> reliable;      // peak >= 20% of the global maximum
};

struct ErrorMetrics {
  double mean_abs = 0.0;
  double max_abs = 0.0;
  int columns = 0;
};

struct ImagingResult {
  ImagingGrid grid;
  Eigen::MatrixXd values;  // nx2 x nx1, values(r, c) = I_A at (x1(c), x2(r))
  ExtractedProfile extracted;
  std::optional<ErrorMetrics> metrics;
};

/// I_A(z) evaluated directly from its defining double sum. Requires z2 < H.
double indicator(Point2 z, const CauchyDataSet& data, int M = 256);

/// I_A at arbitrary points via the matrix-structured evaluation used by sweep.
std::vector<double> indicator_values(std::span<const Point2> points, const CauchyDataSet& data, int M = 256,
                                     int threads = 1);

/// Indicator over the whole grid plus the extracted profile. Rows are split
/// across workers; output is identical for any worker count.
ImagingResult sweep(const ImagingGrid& grid, const CauchyDataSet& data, int M = 256, int threads = 1);

/// Per-column argmax (ties resolved toward the lower x2). Columns whose peak
/// is below 20% of the global maximum are marked unreliable.
ExtractedProfile extract_profile(const ImagingResult& result);

inline constexpr double kReliableFraction = 0.2;

/// Mean and max |height - f(x1)| over reliable columns with x1 in [lo, hi].
/// Throws DomainError if no reliable column falls in the window.
ErrorMetrics error_metrics(const ExtractedProfile& extracted, const SurfaceProfile& truth, double lo, double hi);

}  // namespace roughimg
