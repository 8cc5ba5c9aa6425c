#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "digraphon/error.hpp"

namespace digraphon::cli {

enum class Command { kSpectrum, kCutNorm, kTraceCheck, kSample, kConverge, kStepConverge, kBidirected };
enum class Format { kJson, kCsv };

struct RunConfig {
  Command command = Command::kSpectrum;
  std::optional<std::filesystem::path> kernel;     // StepKernel / digraphon / pair JSON
  std::optional<std::filesystem::path> other;      // second kernel (cutnorm)
  std::optional<std::filesystem::path> digraph;    // digraph JSON or edge list
  std::optional<std::filesystem::path> sequence;   // step-converge: kernel list
  std::uint64_t seed = 1;
  std::vector<std::size_t> sizes;
  std::size_t seeds_per_size = 20;
  std::size_t ell_max = 6;
  std::size_t n = 0;                               // sample size
  std::size_t steps = 20;                          // step-converge perturbation steps
  double amplitude = 0.25;
  double epsilon = 0.05;
  bool normalized = false;
  std::filesystem::path out_dir = ".";
  Format format = Format::kJson;
};

const char* command_name(Command c);

/// Canonical JSON rendering of the config; embedded in every output file.
std::string config_json(const RunConfig& config);

/// Exit codes: 0 success, 2 validation/schema, 3 budget, 4 numerical.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitNumerical = 4;

int exit_code_for(ErrorKind kind);

/// Executes one command. Errors are reported as a single JSON object on
/// `diag`; the paths of written files are listed on `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Parses argv into a config and runs it; CLI parse errors exit with 2.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& diag);

}  // namespace digraphon::cli
