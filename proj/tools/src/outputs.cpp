#include "outputs.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

namespace roughimg::cli {

namespace {

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << std::setprecision(12);
  return out;
}

}  // namespace

Manifest::Manifest(std::string command) {
  json_["command"] = std::move(command);
  json_["files"] = nlohmann::json::array();
  json_["timings"] = nlohmann::json::object();
}

void Manifest::set_config(const ExperimentConfig& config) { json_["config"] = serialize(config); }

void Manifest::add_file(const fs::path& path) { json_["files"].push_back(path.string()); }

void Manifest::add_timing(const std::string& stage, double seconds) { json_["timings"][stage] = seconds; }

void Manifest::write(const fs::path& path) {
  for (const auto& f : json_["files"]) {
    if (!fs::exists(f.get<std::string>()))
      throw std::runtime_error("manifest lists missing file '" + f.get<std::string>() + "'");
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << json_.dump(2) << '\n';
}

void write_heatmap_csv(const ImagingResult& result, const fs::path& path) {
  auto out = open_text(path);
  const auto& g = result.grid;
  const double peak = result.values.size() ? result.values.maxCoeff() : 0.0;
  out << "x1,x2,value,normalized\n";
  for (int r = 0; r < g.nx2; ++r) {
    for (int c = 0; c < g.nx1; ++c) {
      const double v = result.values(r, c);
      out << g.x1(c) << ',' << g.x2(r) << ',' << v << ',' << (peak > 0.0 ? v / peak : 0.0) << '\n';
    }
    // blank line between rows for gnuplot's pm3d / image plots
    out << '\n';
  }
}

void write_pgm(const ImagingResult& result, const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  const auto& g = result.grid;
  const double peak = result.values.size() ? result.values.maxCoeff() : 0.0;
  out << "P5\n" << g.nx1 << ' ' << g.nx2 << "\n255\n";
  for (int r = g.nx2 - 1; r >= 0; --r) {
    for (int c = 0; c < g.nx1; ++c) {
      const double v = peak > 0.0 ? result.values(r, c) / peak : 0.0;
      const auto px = static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
      out.put(static_cast<char>(px));
    }
  }
}

void write_profile_csv(const ImagingResult& result, const fs::path& path) {
  auto out = open_text(path);
  const auto& p = result.extracted;
  out << "x1,x2,reliable\n";
  for (std::size_t c = 0; c < p.x1.size(); ++c) out << p.x1[c] << ',' << p.height[c] << ',' << int(p.reliable[c]) << '\n';
}

void write_truth_csv(const SurfaceProfile& truth, const ImagingGrid& grid, const fs::path& path) {
  auto out = open_text(path);
  out << "x1,x2\n";
  const int samples = std::max(2, 4 * grid.nx1);
  for (int q = 0; q < samples; ++q) {
    const double x1 = grid.x1_min + (grid.x1_max - grid.x1_min) * q / (samples - 1);
    out << x1 << ',' << truth.height(x1) << '\n';
  }
}

void write_gnuplot(const fs::path& path, const std::string& heatmap, const std::string& profile,
                   const std::optional<std::string>& truth, const std::string& title) {
  auto out = open_text(path);
  out << "# gnuplot " << path.filename().string() << "\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 900,500\n"
      << "set output '" << fs::path(path).replace_extension(".png").filename().string() << "'\n"
      << "set title '" << title << "'\n"
      << "set xlabel 'x_1'\nset ylabel 'x_2'\n"
      << "set view map\nset palette rgbformulae 33,13,10\nunset key\n"
      << "splot '" << heatmap << "' skip 1 using 1:2:4 with pm3d, \\\n"
      << "      '" << profile << "' skip 1 using 1:($3 > 0 ? $2 : 1/0):(1.0) with points pt 7 ps 0.4 lc rgb 'white'";
  if (truth) out << ", \\\n      '" << *truth << "' skip 1 using 1:2:(1.0) with lines lw 2 lc rgb 'black'";
  out << '\n';
}

std::vector<fs::path> write_image_outputs(const ImagingResult& result, const std::optional<SurfaceProfile>& truth,
                                          const fs::path& dir, const std::string& stem) {
  fs::create_directories(dir);
  std::vector<fs::path> files;
  const fs::path heat = dir / (stem + "heatmap.csv");
  const fs::path pgm = dir / (stem + "heatmap.pgm");
  const fs::path prof = dir / (stem + "profile.csv");
  const fs::path plot = dir / (stem + "plot.gp");
  write_heatmap_csv(result, heat);
  write_pgm(result, pgm);
  write_profile_csv(result, prof);
  files = {heat, pgm, prof};
  std::optional<std::string> truth_name;
  if (truth) {
    const fs::path tr = dir / (stem + "truth.csv");
    write_truth_csv(*truth, result.grid, tr);
    files.push_back(tr);
    truth_name = tr.filename().string();
  }
  write_gnuplot(plot, heat.filename().string(), prof.filename().string(), truth_name,
                truth ? truth->label() : std::string("indicator"));
  files.push_back(plot);
  return files;
}

std::optional<SurfaceProfile> truth_from_label(const std::string& label) {
  try {
    return catalog(label);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace roughimg::cli
