#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gsee/catalog.hpp"
#include "gsee/fermionic_features.hpp"
#include "gsee/latent.hpp"
#include "gsee/solvability.hpp"

namespace gsee {

inline constexpr std::string_view kToolName = "gsee-bench";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct RunConfig {
  std::filesystem::path catalog_dir;
  std::filesystem::path output_dir;
  std::filesystem::path solutions_dir;  // empty: search the catalog directory
  double df_threshold = 1e-6;
  DfThresholdMode df_mode = DfThresholdMode::Relative;
  LatentKind latent = LatentKind::PCA;
  int latent_dim = 2;
  Eigen::Index n_samples = 10'000;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::string solver;                 // uuid or short name; empty: every solver
  std::vector<std::string> features;  // feature columns for learning; empty: all
  double holdout_fraction = 0.0;

  /// Throws InvalidConfig.
  void validate() const;
  /// One `key=value` line per setting that can change an output byte.
  /// The output directory and worker count are excluded.
  std::string canonical() const;
  /// 64-bit FNV-1a of canonical(), as 16 hex digits.
  std::string hash() const;
  /// "gsee-bench <version> config=<hash>"
  std::string header() const;
};

std::uint64_t fnv1a64(std::string_view text);

/// Append-only, thread-safe run log.
class RunLog {
 public:
  explicit RunLog(bool echo = true) : echo_(echo) {}
  void info(const std::string& message);
  void warn(const std::string& message);
  std::vector<std::string> lines() const;
  std::size_t warnings() const;

 private:
  void append(const std::string& line);
  bool echo_;
  mutable std::mutex mutex_;
  std::vector<std::string> lines_;
  std::size_t warnings_ = 0;
};

/// Per-task feature rows in catalog order.
struct FeatureTable {
  std::vector<std::string> instance_uuid;
  std::vector<std::string> task_uuid;
  std::vector<std::string> columns;
  Eigen::MatrixXd values;
};

FeatureTable read_features_csv(const std::filesystem::path& path);

struct FeaturesResult {
  FeatureTable table;
  std::vector<std::string> failures;  // "<task_uuid>: <reason>"
};

/// features.csv, correlation.csv and norb_histogram.csv.
FeaturesResult run_features(const RunConfig& config, RunLog& log);

/// outcomes.csv (one row per solver and task) and summary.csv.
std::vector<SolverEvaluation> run_evaluate(const RunConfig& config, RunLog& log);

struct SolvabilityRun {
  std::string solver_uuid;
  std::string solver_short_name;
  std::string stem;  // output file stem under solvability/
  std::optional<SolvabilityReport> report;
  std::string failure;
};

/// Joins features.csv with outcomes.csv from the output directory and writes
/// a JSON report, latent point CSV and SVG map per solver.
std::vector<SolvabilityRun> run_solvability(const RunConfig& config, RunLog& log);

struct OracleRow {
  std::string task_uuid;
  double e0 = 0.0;
  std::optional<double> e1;
  std::optional<double> gap;
  std::size_t dimension = 0;
  bool converged = false;
};

/// oracle.json with the lowest two FCI energies of every task within the caps.
std::vector<OracleRow> run_oracle(const RunConfig& config, RunLog& log);

/// features, evaluate, solvability and oracle in sequence; also writes run.log.
void run_report(const RunConfig& config, RunLog& log);

nlohmann::ordered_json report_to_json(const SolvabilityReport& report,
                                      const std::vector<std::string>& feature_names);

}  // namespace gsee
