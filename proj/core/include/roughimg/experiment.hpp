#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "roughimg/cauchy.hpp"
#include "roughimg/imaging.hpp"

namespace roughimg {

// ---------------------------------------------------------------- noise

/// Standard normal stream: mt19937_64 feeding 53-bit uniforms
/// u = (x >> 11) * 2^-53 into the polar-free Box-Muller transform
///   z0 = sqrt(-2 log(1 - u1)) cos(2 pi u2), z1 = ... sin(2 pi u2).
/// Both outputs of a pair are used in order. Identical on every platform.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double next();

 private:
  double uniform();
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// us_delta = us + delta (z1 + i z2) max|us| per entry, and likewise for
/// dnus with its own maximum. Draws run row-major over us, then over dnus.
/// delta = 0 returns the data unchanged apart from the recorded seed.
CauchyDataSet add_noise(const CauchyDataSet& data, double delta, std::uint64_t seed);

// ---------------------------------------------------------------- dataset files

inline constexpr char kDatasetMagic[8] = {'R', 'G', 'H', 'I', 'M', 'G', 'D', 'S'};
inline constexpr std::uint32_t kDatasetVersion = 1;

/// Binary layout (little-endian):
///   magic[8] version:u32 N:i32 H:f64 A:f64 k_plus:f64 delta:f64 seed:u64
///   bc_label:(u32 length, bytes) surface_label:(u32 length, bytes)
///   us then dnus, each (2N+1)^2 entries row-major as (re:f64, im:f64).
void save_dataset(const CauchyDataSet& data, const std::filesystem::path& path);
CauchyDataSet load_dataset(const std::filesystem::path& path);

/// Header size in bytes for the given labels.
std::size_t dataset_header_bytes(const CauchyDataSet& data);

/// CSV with header i,j,re_us,im_us,re_dnus,im_dnus; one row per entry.
void export_csv(const CauchyDataSet& data, const std::filesystem::path& path);

// ---------------------------------------------------------------- configuration

/// Experiment description. List-valued fields (k_plus, H, A, delta) define a
/// ladder of runs for the pipeline; forward and image use the first entry.
struct ExperimentConfig {
  // [surface]
  std::string surface = "gamma1";
  std::optional<double> c1;
  std::optional<double> c2;
  double nodes_per_wavelength = 40.0;
  // [physics]
  std::string bc = "dirichlet";  // dirichlet | impedance | transmission
  std::string rho;               // impedance only
  double k_minus = 0.0;          // transmission only
  std::vector<double> k_plus{10.0};
  // [measurement]
  std::vector<double> H{1.5};
  std::vector<double> A{10.0};
  int N = 100;
  // [imaging]
  int M = 256;
  ImagingGrid grid;
  double window_lo = -3.0;
  double window_hi = 3.0;
  // [noise]
  std::vector<double> delta{0.0};
  std::uint64_t seed = 1;
  // [output]
  std::string output_dir = "out";

  BoundaryCondition boundary_condition() const;
  SurfaceProfile surface_profile() const;
  MeasurementLine line(std::size_t h_index = 0, std::size_t a_index = 0) const;
  TruncationConfig truncation() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the sectioned key = value grammar ([surface], [physics],
/// [measurement], [imaging], [noise], [output]); '#' and ';' start comments,
/// lists are comma separated. Throws ConfigError naming the line and field.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(const ExperimentConfig& config);

/// Throws ConfigError listing every violated bound.
void validate(const ExperimentConfig& config);

}  // namespace roughimg
