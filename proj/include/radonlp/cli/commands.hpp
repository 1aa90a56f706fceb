#pragma once

#include "radonlp/cli/config.hpp"
#include "radonlp/cli/report.hpp"

#include <exception>
#include <map>
#include <optional>
#include <string>

namespace radonlp::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kInternal = 1,   // unexpected failure, or a rerun whose outputs differ
  kUsage = 2,      // flag, config, expression or exponent parse errors
  kDomain = 3,     // Hormander failure, trivial regime, non-exterior pair, failed hypotheses
  kResource = 4,   // flow divergence, unresolved grids, file I/O
};

/// Maps an exception to its exit code and a one-line class name.
std::pair<int, std::string> classify_error(std::exception_ptr e);

/// I/O failure (missing input, unwritable output directory).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct BallVolumeParams {
  std::vector<double> deltas{0.0625, 0.03125, 0.015625, 0.0078125};
  double relation = 1;
  std::size_t samples = 200000;
  unsigned k_max = 6;
  std::uint64_t seed = 1;
  std::size_t resolution = 0;
  std::size_t min_occupied = 256;
  std::string frame = "axis";
};

struct ProbeParams {
  std::string p1 = "4/3", q = "4";
  std::vector<double> delta0{0.125, 0.0625, 0.03125, 0.015625};
  double K = 8;
  std::size_t samples = 100000;
  std::uint64_t seed = 7;
  std::size_t resolution = 0;
  std::size_t min_occupied = 1000;
  bool allow_interior = false;
  std::string a_min = "1/16";
  std::string frame = "axis";
};

struct RefineParams {
  unsigned direction = 2;
  double epsilon = 0.25;
  double constant = 4;
  double level = 0.25;
  std::optional<double> unit;
  std::string grid;                 // run-length file; empty builds a ball fixture
  std::optional<std::size_t> axis;  // identity straightening along this axis
  double ball_delta = 0.0625;
  std::size_t ball_samples = 100000;
  std::uint64_t seed = 3;
  unsigned cells = 64;              // fixture lattice: about this many cells per axis
};

struct ExtremalParams {
  std::string p1 = "3/2", q = "2";
  double delta0 = 0.0625;
  double K = 8;
  std::size_t samples = 20000;
  std::uint64_t seed = 5;
  std::size_t resolution = 12;
  unsigned supersample = 2;
  std::size_t budget = 2000;
  std::string a_min = "1/16";
};

/// Everything a run needs; written back as the manifest.
struct RunConfig {
  std::string command;
  std::optional<OperatorSpec> spec;
  AnalyzeParams analyze;
  BracketsParams brackets;
  BallVolumeParams ball;
  ProbeParams probe;
  RefineParams refine;
  ExtremalParams extremal;
};

struct RunResult {
  std::map<std::string, std::string> files;  // output name -> bytes
  std::string summary;                        // printed on stdout
};

/// Runs the command in memory. `json` selects JSON summaries where a
/// command has both forms.
RunResult run(const RunConfig& cfg, bool json = false);

/// Config text with [manifest], [operator], [parameters] and the command's
/// section, plus [outputs] holding an FNV-1a 64 digest of every file.
std::string manifest_text(const RunConfig& cfg, const RunResult& result);
/// Reads a run config (manifest or hand-written) for the named command or
/// the command recorded in [manifest]. Throws ConfigError.
RunConfig run_config_from(const Config& c, const std::string& command = "");
/// Recorded digests from a manifest.
std::map<std::string, std::string> manifest_digests(const Config& c);

std::string digest(const std::string& bytes);

/// Writes the files and manifest.cfg into `dir` (created if needed).
/// Throws IoError.
void write_outputs(const std::string& dir, const RunConfig& cfg, const RunResult& result);

std::string version();

}  // namespace radonlp::cli
