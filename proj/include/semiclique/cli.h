#ifndef SEMICLIQUE_CLI_H_
#define SEMICLIQUE_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semiclique/io.h"

namespace semiclique {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;  // infeasible or inapplicable
inline constexpr int kExitUsage = 64;

// Thread count for the BLAS kernels, read at the start of run().
inline constexpr const char* kThreadsEnvVar = "SEMICLIQUE_THREADS";

// Every parameter of every subcommand; unused fields keep their defaults.
struct ExperimentConfig {
  std::string subcommand;
  std::uint64_t seed = 0;
  std::string input;
  std::string output;

  int n = 30;
  int k = 14;
  double p = 0.5;
  int m = 0;  // right side size for bipartite generation
  bool bipartite = false;
  std::string deletion = "none";
  std::string addition = "none";
  double fraction = 0.5;
  int copies = 1;
  int size = 0;
  double rewrite_q = 0.5;

  std::string method = "spectral";
  int r = 1;
  int l = 1;
  bool run_solver = false;

  int degree = 4;
  int t = 1;
  int repetitions = 0;
  double delta = 0.25;

  std::string mode = "good";
  double c = 0.0;

  int lowdeg_degree = 2;
  std::string csv;

  double tol_p = 1e-6;
  double tol_d = 1e-6;
  int max_iter = 20000;

  bool operator==(const ExperimentConfig&) const = default;
};

Json to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const Json& j);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Executes the pipeline for cfg.subcommand and returns the exit code.
int execute(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

// argv excludes the program name. `--config FILE` replays a config block
// (or a report containing one).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semiclique

#endif  // SEMICLIQUE_CLI_H_
