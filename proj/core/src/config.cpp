#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "roughimg/experiment.hpp"

namespace roughimg {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

struct Field {
  std::string name;  // section.key
  std::string value;
  int line;

  [[noreturn]] void fail(const std::string& why) const {
    throw ConfigError("line " + std::to_string(line) + ": " + name + ": " + why);
  }

  double number() const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(v))
      fail("expected a number, got '" + value + "'");
    return v;
  }

  long long integer() const {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size()) fail("expected an integer, got '" + value + "'");
    return v;
  }

  std::vector<double> numbers() const {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      Field part{name, trim(item), line};
      if (part.value.empty()) fail("empty list entry");
      out.push_back(part.number());
    }
    return out;
  }
};

const std::map<std::string, std::set<std::string>>& grammar() {
  static const std::map<std::string, std::set<std::string>> g = {
      {"surface", {"name", "c1", "c2", "nodes_per_wavelength"}},
      {"physics", {"bc", "rho", "k_minus", "k_plus"}},
      {"measurement", {"H", "A", "N"}},
      {"imaging", {"M", "grid", "window"}},
      {"noise", {"delta", "seed"}},
      {"output", {"dir"}},
  };
  return g;
}

}  // namespace

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::string section;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find_first_of("#;");
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!grammar().count(section))
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    if (section.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key outside of any section");
    const std::string key = trim(line.substr(0, eq));
    const Field f{section + "." + key, trim(line.substr(eq + 1)), line_no};
    if (!grammar().at(section).count(key)) f.fail("unknown key");
    if (!seen.insert(f.name).second) f.fail("duplicate key");
    if (f.value.empty()) f.fail("value is empty");

    if (f.name == "surface.name") cfg.surface = f.value;
    else if (f.name == "surface.c1") cfg.c1 = f.number();
    else if (f.name == "surface.c2") cfg.c2 = f.number();
    else if (f.name == "surface.nodes_per_wavelength") cfg.nodes_per_wavelength = f.number();
    else if (f.name == "physics.bc") cfg.bc = f.value;
    else if (f.name == "physics.rho") cfg.rho = f.value;
    else if (f.name == "physics.k_minus") cfg.k_minus = f.number();
    else if (f.name == "physics.k_plus") cfg.k_plus = f.numbers();
    else if (f.name == "measurement.H") cfg.H = f.numbers();
    else if (f.name == "measurement.A") cfg.A = f.numbers();
    else if (f.name == "measurement.N") cfg.N = static_cast<int>(f.integer());
    else if (f.name == "imaging.M") cfg.M = static_cast<int>(f.integer());
    else if (f.name == "imaging.grid") {
      try {
        cfg.grid = ImagingGrid::parse(f.value);
      } catch (const DomainError& e) {
        f.fail(e.what());
      }
    } else if (f.name == "imaging.window") {
      const auto colon = f.value.find(':');
      if (colon == std::string::npos) f.fail("expected lo:hi");
      cfg.window_lo = Field{f.name, trim(f.value.substr(0, colon)), f.line}.number();
      cfg.window_hi = Field{f.name, trim(f.value.substr(colon + 1)), f.line}.number();
    } else if (f.name == "noise.delta") cfg.delta = f.numbers();
    else if (f.name == "noise.seed") {
      std::uint64_t s = 0;
      auto [ptr, ec] = std::from_chars(f.value.data(), f.value.data() + f.value.size(), s);
      if (ec != std::errc() || ptr != f.value.data() + f.value.size())
        f.fail("expected an unsigned 64-bit integer, got '" + f.value + "'");
      cfg.seed = s;
    } else if (f.name == "output.dir") cfg.output_dir = f.value;
  }
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void validate(const ExperimentConfig& c) {
  std::vector<std::string> problems;
  auto positive_list = [&](const std::vector<double>& v, const char* name) {
    if (v.empty()) problems.push_back(std::string(name) + " must not be empty");
    for (double x : v) {
      if (!(x > 0.0)) problems.push_back(std::string(name) + " must be > 0 (got " + fmt(x) + ")");
    }
  };
  try {
    (void)catalog(c.surface);
  } catch (const DomainError& e) {
    problems.push_back(std::string("surface.name: ") + e.what());
  }
  if (c.c1 && !(*c.c1 > 0.0)) problems.push_back("surface.c1 must be > 0");
  if (c.c2 && !(*c.c2 > 0.0)) problems.push_back("surface.c2 must be > 0");
  if (!(c.nodes_per_wavelength > 0.0)) problems.push_back("surface.nodes_per_wavelength must be > 0");
  positive_list(c.k_plus, "physics.k_plus");
  positive_list(c.H, "measurement.H");
  positive_list(c.A, "measurement.A");
  if (c.bc == "impedance") {
    if (c.rho.empty()) {
      problems.push_back("physics.rho is required for impedance");
    } else {
      try {
        (void)Expression::parse(c.rho);
      } catch (const ConfigError& e) {
        problems.push_back(std::string("physics.rho: ") + e.what());
      }
    }
  } else if (c.bc == "transmission") {
    if (!(c.k_minus > 0.0)) problems.push_back("physics.k_minus must be > 0 for transmission");
    for (double k : c.k_plus) {
      if (k == c.k_minus) problems.push_back("physics.k_minus must differ from k_plus");
    }
  } else if (c.bc != "dirichlet") {
    problems.push_back("physics.bc must be dirichlet, impedance or transmission (got '" + c.bc + "')");
  }
  if (c.N < 1) problems.push_back("measurement.N must be >= 1");
  if (c.M < 2) problems.push_back("imaging.M must be >= 2");
  try {
    c.grid.validate();
  } catch (const DomainError& e) {
    problems.push_back(std::string("imaging.grid: ") + e.what());
  }
  if (!(c.window_lo <= c.window_hi)) problems.push_back("imaging.window must satisfy lo <= hi");
  if (c.delta.empty()) problems.push_back("noise.delta must not be empty");
  for (double d : c.delta) {
    if (!(d >= 0.0)) problems.push_back("noise.delta must be >= 0 (got " + fmt(d) + ")");
  }
  if (c.output_dir.empty()) problems.push_back("output.dir must not be empty");
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw ConfigError(msg);
  }
}

std::string serialize(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[surface]\nname = " << c.surface << '\n';
  if (c.c1) out << "c1 = " << fmt(*c.c1) << '\n';
  if (c.c2) out << "c2 = " << fmt(*c.c2) << '\n';
  out << "nodes_per_wavelength = " << fmt(c.nodes_per_wavelength) << "\n\n";
  out << "[physics]\nbc = " << c.bc << '\n';
  if (!c.rho.empty()) out << "rho = " << c.rho << '\n';
  if (c.k_minus != 0.0) out << "k_minus = " << fmt(c.k_minus) << '\n';
  out << "k_plus = " << fmt_list(c.k_plus) << "\n\n";
  out << "[measurement]\nH = " << fmt_list(c.H) << "\nA = " << fmt_list(c.A) << "\nN = " << c.N << "\n\n";
  ImagingGrid g = c.grid;
  out << "[imaging]\nM = " << c.M << "\ngrid = " << fmt(g.x1_min) << ':' << fmt(g.x1_max) << ':' << g.nx1 << ','
      << fmt(g.x2_min) << ':' << fmt(g.x2_max) << ':' << g.nx2 << "\nwindow = " << fmt(c.window_lo) << ':'
      << fmt(c.window_hi) << "\n\n";
  out << "[noise]\ndelta = " << fmt_list(c.delta) << "\nseed = " << c.seed << "\n\n";
  out << "[output]\ndir = " << c.output_dir << '\n';
  return out.str();
}

BoundaryCondition ExperimentConfig::boundary_condition() const {
  if (bc == "dirichlet") return BoundaryCondition::dirichlet();
  if (bc == "impedance") return BoundaryCondition::impedance(Expression::parse(rho));
  if (bc == "transmission") return BoundaryCondition::transmission(k_minus);
  throw ConfigError("physics.bc: unknown boundary condition '" + bc + "'");
}

SurfaceProfile ExperimentConfig::surface_profile() const {
  auto p = catalog(surface);
  if (c1 || c2) p = p.with_bounds(c1.value_or(p.c1()), c2.value_or(p.c2()));
  return p;
}

MeasurementLine ExperimentConfig::line(std::size_t h_index, std::size_t a_index) const {
  return {H.at(h_index), A.at(a_index), N};
}

TruncationConfig ExperimentConfig::truncation() const {
  TruncationConfig t;
  t.nodes_per_wavelength = nodes_per_wavelength;
  return t;
}

}  // namespace roughimg
