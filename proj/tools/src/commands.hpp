#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace roughimg::cli {

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

struct Options {
  std::string config;
  std::string dataset;
  std::string grid;
  std::string out;
  std::optional<double> delta;
  std::optional<std::uint64_t> seed;
  int threads = 0;
  bool paper_scale = false;
  bool csv = false;
};

struct VerifyOptions {
  std::string level = "fast";  // fast | full
  bool inject_sign_flip = false;
  int threads = 0;
};

// Each command returns an exit code and reports progress on `log`. Errors
// escape as exceptions; run() maps them to exit codes.
int cmd_forward(const Options& options, std::ostream& log);
int cmd_image(const Options& options, std::ostream& log);
int cmd_pipeline(const Options& options, std::ostream& log);
int cmd_verify(const VerifyOptions& options, std::ostream& log);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace roughimg::cli
