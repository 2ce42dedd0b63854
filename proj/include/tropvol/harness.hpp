#pragma once

// Experiment orchestration behind the command-line tool: a validated
// configuration, dispatch to the library, and a report whose verdicts always
// carry a number. Artifacts are kept in memory until written so the same run
// can be inspected by tests.

#include "tropvol/arith.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tropvol {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  std::string command;
  std::optional<std::filesystem::path> model_path;
  std::optional<std::string> preset;
  int n = 2;              // pencil dimension
  double epsilon = 0.1;   // pencil parameter
  std::vector<std::int64_t> b;  // chart multiplicities
  std::vector<Rational> a;      // chart coefficients, default 0
  std::vector<double> t_schedule;
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::size_t bins = 20;
  double tolerance = 3.0;  // standard errors allowed by statistical checks
  std::optional<double> relative_tolerance;
  double ks_threshold = 0.02;
  std::int64_t m = 2;              // base-change degree
  std::size_t functions = 10;      // polar-check
  std::size_t sequences = 1000;    // hybrid-check
  std::vector<double> zetas{0.5, 1.0, 2.0};
  double rho = 1.0;                // skeleton-check anchor residue
  bool subdivide = false;          // skeleton-check
  std::string suite;               // verify
  std::filesystem::path output_dir;

  /// Throws ConfigError: unknown command, missing seed for a sampling
  /// command, non-positive tolerances, bad t values.
  void validate() const;
  /// Canonical JSON of everything except the output directory.
  std::string echo() const;
};

bool is_sampling_command(const std::string& command);
const std::vector<std::string>& command_names();

struct Verdict {
  std::string name;
  bool pass = false;
  double discrepancy = 0;
  double threshold = 0;
  std::string detail;
};

/// pass iff discrepancy <= threshold.
Verdict at_most(std::string name, double discrepancy, double threshold, std::string detail = {});

struct Artifact {
  std::string name;  // file name inside the output directory
  std::string content;
};

struct RunReport {
  std::string command;
  std::string config_echo;
  std::string input_hash;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, double>> timings;  // seconds
  std::vector<Artifact> artifacts;

  bool ok() const;
  std::string to_json() const;
};

/// SHA-1 of "blob <size>\0" followed by the content, lowercase hex.
std::string git_blob_hash(std::string_view content);

/// "1e-2..1e-7" gives one value per decade; "1e-3,5e-4" is taken literally.
std::vector<double> parse_t_schedule(std::string_view text);
/// Comma-separated lists.
std::vector<std::int64_t> parse_int_list(std::string_view text);
std::vector<Rational> parse_rational_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

/// Acceptance suites in order, then "all".
const std::vector<std::string>& suite_names();
/// Default seed of the statistical suites.
inline constexpr std::uint64_t kDefaultSuiteSeed = 2024;

RunReport run(const ExperimentConfig& config);

/// Writes every artifact and report.json into `dir`, creating it.
void write_outputs(const RunReport& report, const std::filesystem::path& dir);

}  // namespace tropvol
