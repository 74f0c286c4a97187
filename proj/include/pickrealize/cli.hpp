#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pickrealize/realization_types.hpp"

namespace pickrealize {

enum class CoefficientMode { Exact, Float };

struct RunConfig {
  double tol = 1e-9;
  std::size_t samples = 200;
  std::uint64_t seed = 42;
  int max_iters = 20000;
  CoefficientMode mode = CoefficientMode::Exact;
  RealizationForm form = RealizationForm::Schur;
};

enum ExitCode : int { kExitOk = 0, kExitInputError = 1, kExitFalsified = 2, kExitInconclusive = 3 };

// Runs one command on one input file and writes the JSON result to out.
int run_command(const std::string& command, const std::string& input, const RunConfig& config, std::ostream& out,
                const std::string& function_path = "");

// Runs `command` over every .json file of dir in lexicographic order.
int run_batch(const std::string& dir, const std::string& command, const RunConfig& config, std::ostream& out);

// Full command line (argv without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pickrealize
