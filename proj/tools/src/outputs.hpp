#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "roughimg/experiment.hpp"
#include "roughimg/imaging.hpp"

namespace roughimg::cli {

namespace fs = std::filesystem;

/// Run record written as JSON next to the outputs it describes.
class Manifest {
 public:
  explicit Manifest(std::string command);

  void set_config(const ExperimentConfig& config);
  void add_file(const fs::path& path);
  void add_timing(const std::string& stage, double seconds);
  nlohmann::json& data() { return json_; }

  /// Throws std::runtime_error if any listed file is missing.
  void write(const fs::path& path);

 private:
  nlohmann::json json_;
};

/// x1,x2,value,normalized; one row per grid point.
void write_heatmap_csv(const ImagingResult& result, const fs::path& path);
/// Binary 8-bit PGM, top row = largest x2, pixel = round(255 * value / max).
void write_pgm(const ImagingResult& result, const fs::path& path);
/// x1,x2,reliable; one row per column.
void write_profile_csv(const ImagingResult& result, const fs::path& path);
/// x1,x2 of the true surface sampled across the grid.
void write_truth_csv(const SurfaceProfile& truth, const ImagingGrid& grid, const fs::path& path);
/// gnuplot script drawing the heatmap with the extracted profile and, when
/// present, the true surface as a solid line.
void write_gnuplot(const fs::path& path, const std::string& heatmap, const std::string& profile,
                   const std::optional<std::string>& truth, const std::string& title);

/// Writes all of the above into `dir` with file names starting with `stem`
/// and returns the paths written.
std::vector<fs::path> write_image_outputs(const ImagingResult& result, const std::optional<SurfaceProfile>& truth,
                                          const fs::path& dir, const std::string& stem);

/// Surface from a dataset label, if it names a catalog entry.
std::optional<SurfaceProfile> truth_from_label(const std::string& label);

}  // namespace roughimg::cli
