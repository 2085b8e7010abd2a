#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace toral::cli {

enum class Command { Analyze, Cohomology, Resonances, Spectrum, Correlate, Ulam };
enum class Format { Json, Csv, Both };
enum class CorrelationMode { MonteCarlo, Exact };

/// Every field has a default; identical configs give byte-identical output.
struct RunConfig {
  Command command = Command::Analyze;
  std::string matrix_path;
  std::string inline_matrix;
  bool square = false;  // analyze T^2 instead of T

  std::optional<std::size_t> degree;  // cohomology; all degrees when unset
  int cutoff = 16;
  std::size_t cap = 1'000'000;
  double floor = 1e-10;
  bool export_matrix = false;

  std::size_t n_max = 10;
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 7;
  std::string phi = "cos:1,0";
  std::string psi = "cos:1,0";
  CorrelationMode mode = CorrelationMode::MonteCarlo;
  std::optional<double> fit_floor;

  std::size_t cells = 32;
  std::size_t samples_per_cell = 100;
  double eps = 0.0;
  std::size_t nev = 10;

  std::string output_dir = ".";
  Format format = Format::Both;
  bool plot = false;

  double unit_tol = 1e-8;
  double rank_tol = 1e-9;
  double match_tol = 1e-8;
};

inline constexpr const char* kOutputDirEnv = "TORAL_OUTPUT_DIR";

/// Parses argv. Returns nullopt after printing help; throws CLI::ParseError
/// subclasses on bad flags.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Runs one command and writes its artifacts under config.output_dir.
/// Exit status: 0 success, 1 validation error, 2 I/O, parse or cap error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full front end: parse + run.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toral::cli
