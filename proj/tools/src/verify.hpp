#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace roughimg::cli {

struct CheckResult {
  std::string name;
  double value = 0.0;      // measured residual / error
  double tolerance = 0.0;  // pass iff value < tolerance (and `extra` holds)
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

std::vector<CheckResult> run_checks(const VerifyOptions& options);
void print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace roughimg::cli
