#pragma once

// Command implementations behind the `gframe` executable. Each command builds a report
// string; `run` maps library errors onto the documented exit codes:
//   0 success, 1 unreadable/malformed input, 2 precondition failure, 3 numerical failure.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "gframe/constructions.hpp"
#include "gframe/types.hpp"

namespace gframe::cli {

enum class Command { analyze, fit, perturb, demo, sweep };
enum class OutputFormat { json, csv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  Command command = Command::analyze;
  std::optional<std::filesystem::path> input_path;
  /// Path to an EnsembleSpec JSON file, or the JSON text itself when it starts with '{'.
  std::optional<std::string> spec;
  /// perturb: second family for the α/β comparison.
  std::optional<std::filesystem::path> perturbed_path;
  /// perturb: {lambda1, t, theta1, mu[, depth]} for the decay-perturbation check.
  std::optional<std::filesystem::path> generator_path;
  double tol = kDefaultTol;
  int depth = kDefaultDepth;
  std::uint64_t seed = 0;
  /// "-" writes the report to stdout.
  std::string output_path = "-";
  OutputFormat format = OutputFormat::json;
  /// sweep: number of logarithmically spaced nonzero scales.
  int sweep_points = 25;
};

std::string to_string(Command c);
Command command_from_string(const std::string& name);
OutputFormat format_from_string(const std::string& name);

std::string cmd_analyze(const RunConfig& config);
std::string cmd_fit(const RunConfig& config);
std::string cmd_perturb(const RunConfig& config);
std::string cmd_sweep(const RunConfig& config);
std::string cmd_demo(const RunConfig& config);

/// Runs the configured command, writes the report and returns the exit code.
/// Diagnostics go to `err`; `out` receives only the report when output_path is "-".
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gframe::cli
