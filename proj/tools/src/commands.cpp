#include "commands.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "outputs.hpp"
#include "roughimg/dense_lu.hpp"
#include "roughimg/parallel.hpp"

namespace roughimg::cli {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

ExperimentConfig configured(const Options& o) {
  if (o.config.empty()) throw ConfigError("--config is required");
  ExperimentConfig cfg = load_config(o.config);
  if (o.delta) cfg.delta = {*o.delta};
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
  if (o.paper_scale) {
    cfg.N = 100;
    cfg.M = 256;
  }
  if (!o.grid.empty()) cfg.grid = ImagingGrid::parse(o.grid);
  validate(cfg);
  return cfg;
}

std::string tag(double v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

struct ForwardRun {
  CauchyDataSet data;
  ForwardStats stats;
  std::uint64_t factorizations = 0;
};

ForwardRun forward(const ExperimentConfig& cfg, double k, const MeasurementLine& line, int threads) {
  ForwardRun run;
  const auto before = DenseLu::factorization_count();
  run.data = cauchy_data(cfg.boundary_condition(), cfg.surface_profile(), k, line, cfg.truncation(), &run.stats,
                         threads);
  run.factorizations = DenseLu::factorization_count() - before;
  return run;
}

nlohmann::json stats_json(const ForwardRun& run) {
  return {{"factorizations", run.factorizations},
          {"rcond", run.stats.rcond},
          {"surface_nodes", run.stats.surface_nodes},
          {"surface_half_width", run.stats.half_width},
          {"taper_width", run.stats.taper_width}};
}

nlohmann::json metrics_json(const std::optional<ErrorMetrics>& m) {
  if (!m) return nullptr;
  return {{"mean_abs", m->mean_abs}, {"max_abs", m->max_abs}, {"columns", m->columns}};
}

std::optional<ErrorMetrics> score(const ImagingResult& result, const std::optional<SurfaceProfile>& truth,
                                  double lo, double hi) {
  if (!truth) return std::nullopt;
  try {
    return error_metrics(result.extracted, *truth, lo, hi);
  } catch (const DomainError&) {
    return std::nullopt;
  }
}

}  // namespace

int cmd_forward(const Options& o, std::ostream& log) {
  const auto cfg = configured(o);
  const int threads = resolve_threads(o.threads);
  const fs::path dir = cfg.output_dir;
  fs::create_directories(dir);
  Manifest manifest("forward");
  manifest.set_config(cfg);

  const auto t0 = Clock::now();
  auto run = forward(cfg, cfg.k_plus.front(), cfg.line(), threads);
  manifest.add_timing("forward", since(t0));
  const auto t1 = Clock::now();
  run.data = add_noise(run.data, cfg.delta.front(), cfg.seed);
  manifest.add_timing("noise", since(t1));

  const fs::path dataset = dir / "dataset.rgd";
  save_dataset(run.data, dataset);
  manifest.add_file(dataset);
  if (o.csv) {
    const fs::path csv = dir / "dataset.csv";
    export_csv(run.data, csv);
    manifest.add_file(csv);
  }
  manifest.data()["forward"] = stats_json(run);
  manifest.data()["assemble_seconds"] = run.stats.assemble_seconds;
  manifest.write(dir / "manifest.json");

  log << "forward: " << cfg.surface << ", " << run.data.bc_label << ", k+=" << run.data.k_plus << ", N=" << cfg.N
      << ", " << run.stats.surface_nodes << " surface nodes\n"
      << "factorizations: " << run.factorizations << " (rcond " << run.stats.rcond << ")\n"
      << "wrote " << dataset.string() << '\n';
  return kSuccess;
}

int cmd_image(const Options& o, std::ostream& log) {
  if (o.dataset.empty()) throw ConfigError("--dataset is required");
  std::optional<ExperimentConfig> cfg;
  if (!o.config.empty()) cfg = configured(o);
  const int threads = resolve_threads(o.threads);
  ImagingGrid grid = cfg ? cfg->grid : ImagingGrid{};
  if (!o.grid.empty()) grid = ImagingGrid::parse(o.grid);
  const int M = cfg ? cfg->M : 256;
  const double lo = cfg ? cfg->window_lo : -3.0, hi = cfg ? cfg->window_hi : 3.0;
  const fs::path dir = !o.out.empty() ? fs::path(o.out) : (cfg ? fs::path(cfg->output_dir) : fs::path("out"));

  const auto t0 = Clock::now();
  const auto data = load_dataset(o.dataset);
  Manifest manifest("image");
  if (cfg) manifest.set_config(*cfg);
  manifest.data()["dataset"] = o.dataset;
  manifest.data()["grid"] = grid.to_string();
  auto result = sweep(grid, data, M, threads);
  manifest.add_timing("sweep", since(t0));
  const auto truth = truth_from_label(data.surface_label);
  result.metrics = score(result, truth, lo, hi);
  for (const auto& f : write_image_outputs(result, truth, dir, "")) manifest.add_file(f);
  manifest.data()["metrics"] = metrics_json(result.metrics);
  manifest.write(dir / "manifest.json");

  log << "image: " << grid.nx1 << "x" << grid.nx2 << " grid, M=" << M << ", max I_A " << result.values.maxCoeff()
      << '\n';
  if (result.metrics)
    log << "mean_abs " << result.metrics->mean_abs << ", max_abs " << result.metrics->max_abs << " over "
        << result.metrics->columns << " reliable columns in [" << lo << ", " << hi << "]\n";
  log << "wrote outputs to " << dir.string() << '\n';
  return kSuccess;
}

int cmd_pipeline(const Options& o, std::ostream& log) {
  const auto cfg = configured(o);
  const int threads = resolve_threads(o.threads);
  const fs::path root = cfg.output_dir;
  fs::create_directories(root);
  Manifest manifest("pipeline");
  manifest.set_config(cfg);
  manifest.data()["runs"] = nlohmann::json::array();
  const auto truth = std::optional<SurfaceProfile>(cfg.surface_profile());

  log << std::left << std::setw(8) << "k+" << std::setw(7) << "H" << std::setw(7) << "A" << std::setw(7) << "delta"
      << std::setw(12) << "mean_abs" << std::setw(12) << "max_abs" << "dir\n";
  int index = 0;
  for (std::size_t hi = 0; hi < cfg.H.size(); ++hi) {
    for (std::size_t ai = 0; ai < cfg.A.size(); ++ai) {
      for (double k : cfg.k_plus) {
        const auto line = cfg.line(hi, ai);
        const auto t0 = Clock::now();
        const auto run = forward(cfg, k, line, threads);
        const double forward_seconds = since(t0);
        for (double delta : cfg.delta) {
          const std::string name = "run" + std::to_string(index++) + "_k" + tag(k) + "_H" + tag(line.H) + "_A" +
                                   tag(line.A) + "_d" + tag(delta);
          const fs::path dir = root / name;
          fs::create_directories(dir);
          const auto noisy = add_noise(run.data, delta, cfg.seed);
          const fs::path dataset = dir / "dataset.rgd";
          save_dataset(noisy, dataset);
          const auto t1 = Clock::now();
          auto result = sweep(cfg.grid, noisy, cfg.M, threads);
          result.metrics = score(result, truth, cfg.window_lo, cfg.window_hi);
          const double image_seconds = since(t1);
          auto files = write_image_outputs(result, truth, dir, "");
          files.insert(files.begin(), dataset);
          for (const auto& f : files) manifest.add_file(f);

          nlohmann::json entry = {{"dir", dir.string()},
                                  {"k_plus", k},
                                  {"H", line.H},
                                  {"A", line.A},
                                  {"N", line.N},
                                  {"delta", delta},
                                  {"forward", stats_json(run)},
                                  {"forward_seconds", forward_seconds},
                                  {"image_seconds", image_seconds},
                                  {"metrics", metrics_json(result.metrics)}};
          manifest.data()["runs"].push_back(entry);
          log << std::left << std::setw(8) << k << std::setw(7) << line.H << std::setw(7) << line.A << std::setw(7)
              << delta << std::setw(12) << (result.metrics ? tag(result.metrics->mean_abs) : "-") << std::setw(12)
              << (result.metrics ? tag(result.metrics->max_abs) : "-") << name << '\n';
        }
      }
    }
  }
  manifest.write(root / "manifest.json");
  log << "wrote " << (root / "manifest.json").string() << '\n';
  return kSuccess;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"roughimg: rough-surface scattering and direct imaging"};
  app.require_subcommand(1);
  Options o;
  VerifyOptions v;
  std::string threads_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--threads", o.threads, "worker threads (default: ROUGHIMG_THREADS or 1)");
  };
  auto* fwd = app.add_subcommand("forward", "simulate Cauchy data and write a dataset");
  fwd->add_option("--config", o.config, "experiment config file")->required();
  fwd->add_option("--delta", o.delta, "noise ratio override");
  fwd->add_option("--seed", o.seed, "noise seed override");
  fwd->add_flag("--paper-scale", o.paper_scale, "use N=100, M=256");
  fwd->add_flag("--csv", o.csv, "also export the dataset as CSV");
  add_common(fwd);

  auto* img = app.add_subcommand("image", "evaluate the imaging indicator on a dataset");
  img->add_option("--dataset", o.dataset, "dataset file")->required();
  img->add_option("--config", o.config, "experiment config (grid, M, window)");
  img->add_option("--grid", o.grid, "x1min:x1max:nx1,x2min:x2max:nx2");
  add_common(img);

  auto* pipe = app.add_subcommand("pipeline", "forward, noise, image and score every configured run");
  pipe->add_option("--config", o.config, "experiment config file")->required();
  pipe->add_option("--grid", o.grid, "x1min:x1max:nx1,x2min:x2max:nx2");
  pipe->add_option("--delta", o.delta, "noise ratio override");
  pipe->add_option("--seed", o.seed, "noise seed override");
  pipe->add_flag("--paper-scale", o.paper_scale, "use N=100, M=256");
  add_common(pipe);

  auto* ver = app.add_subcommand("verify", "run the identity and oracle checks");
  ver->add_option("--level", v.level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  ver->add_option("--threads", v.threads, "worker threads");
  ver->add_flag("--inject-sign-flip", v.inject_sign_flip, "flip the Dirichlet jump sign (must make a check fail)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (fwd->parsed()) return cmd_forward(o, out);
    if (img->parsed()) return cmd_image(o, out);
    if (pipe->parsed()) return cmd_pipeline(o, out);
    return cmd_verify(v, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kUsageError;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

}  // namespace roughimg::cli
