#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gsee {

/// Chemical accuracy, 1.59 mHa.
inline constexpr double kChemicalAccuracy = 1.59e-3;
/// Runtime limit applied when a task does not state one (seconds).
inline constexpr double kDefaultRuntimeLimit = 86400.0;

struct Task {
  std::string task_uuid;
  std::filesystem::path fcidump_path;  // absolute or relative to the instance file
  double accuracy_tol = kChemicalAccuracy;
  double runtime_limit = kDefaultRuntimeLimit;
  std::optional<double> reference_energy;
  bool is_guidestar = false;
  std::string reference_provenance;
};

struct ProblemInstance {
  std::string instance_uuid;
  std::string short_name;
  std::vector<Task> tasks;
  std::filesystem::path source;
};

struct SolutionEntry {
  std::string task_uuid;
  std::optional<double> energy;
  double run_time = 0.0;
  bool attempted = true;
};

struct SolutionFile {
  std::string solver_uuid;
  std::string solver_short_name;
  std::vector<SolutionEntry> results;
  std::filesystem::path source;

  const SolutionEntry* find(const std::string& task_uuid) const;
};

enum class Verdict { Solved, Unsolved, Unlabeled };

std::string_view to_string(Verdict v);
Verdict verdict_from_string(std::string_view text);

struct TaskOutcome {
  std::string task_uuid;
  Verdict verdict = Verdict::Unsolved;
  std::optional<double> abs_error;
  bool within_runtime = false;
  bool attempted = false;
};

struct LoadOptions {
  /// Used when a task omits runtime_limit.
  double default_runtime_limit = kDefaultRuntimeLimit;
};

ProblemInstance parse_instance(const std::string& json_text,
                               const std::filesystem::path& source = {},
                               const LoadOptions& options = {});
ProblemInstance load_instance(const std::filesystem::path& path,
                              const LoadOptions& options = {});

SolutionFile parse_solution(const std::string& json_text,
                            const std::filesystem::path& source = {});
SolutionFile load_solution(const std::filesystem::path& path);

TaskOutcome evaluate_task(const Task& task, const SolutionEntry& result);

/// Outcome for a task the solver never reported on.
TaskOutcome missing_outcome(const Task& task);

/// All instance and solution files found under one directory tree.
struct Catalog {
  std::vector<ProblemInstance> instances;
  std::vector<SolutionFile> solutions;

  struct TaskRef {
    const ProblemInstance* instance;
    const Task* task;
  };
  /// Tasks in deterministic catalog order (instance file path, then task order).
  std::vector<TaskRef> tasks() const;
  const Task* find_task(const std::string& task_uuid) const;
};

/// Recursively collects `*.problem.json` and `*.solution.json`, sorted by path.
Catalog scan_catalog(const std::filesystem::path& root, const LoadOptions& options = {});
std::vector<SolutionFile> scan_solutions(const std::filesystem::path& root);

struct SolverEvaluation {
  std::string solver_uuid;
  std::string solver_short_name;
  std::vector<TaskOutcome> outcomes;  // one per catalog task, catalog order
  std::vector<std::string> unmatched_task_uuids;
  int tasks_attempted = 0;
  int tasks_solved = 0;
  int tasks_labeled = 0;
};

SolverEvaluation evaluate_solution(const Catalog& catalog, const SolutionFile& solution);

}  // namespace gsee
