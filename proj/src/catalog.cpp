#include "gsee/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "gsee/error.hpp"

namespace gsee {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json parse_json(const std::string& text, const fs::path& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation,
                source.string() + ": malformed JSON: " + e.what());
  }
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": missing required field '" + key + "'");
  }
  return obj.at(key);
}

std::string require_string(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_string()) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

std::optional<double> optional_number(const json& obj, const char* key,
                                      const std::string& ctx) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": field '" + key + "' must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": field '" + key + "' is not finite");
  }
  return x;
}

std::optional<bool> optional_bool(const json& obj, const char* key, const std::string& ctx) {
  if (!obj.contains(key) || obj.at(key).is_null()) return std::nullopt;
  const json& v = obj.at(key);
  if (!v.is_boolean()) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": field '" + key + "' must be a boolean");
  }
  return v.get<bool>();
}

Task parse_task(const json& t, const std::string& ctx, const LoadOptions& options) {
  Task task;
  task.task_uuid = require_string(t, "task_uuid", ctx);
  const std::string tctx = ctx + " task '" + task.task_uuid + "'";
  task.fcidump_path = require_string(t, "fcidump", tctx);
  task.accuracy_tol = optional_number(t, "accuracy_tol", tctx).value_or(kChemicalAccuracy);
  task.runtime_limit =
      optional_number(t, "runtime_limit", tctx).value_or(options.default_runtime_limit);
  task.reference_energy = optional_number(t, "reference_energy", tctx);
  if (t.contains("reference_provenance") && t.at("reference_provenance").is_string()) {
    task.reference_provenance = t.at("reference_provenance").get<std::string>();
  }
  const auto guidestar = optional_bool(t, "is_guidestar", tctx);
  task.is_guidestar = guidestar.value_or(!task.reference_energy.has_value());

  if (task.accuracy_tol <= 0.0) {
    throw Error(ErrorCode::SchemaViolation, tctx + ": accuracy_tol must be > 0");
  }
  if (task.runtime_limit <= 0.0) {
    throw Error(ErrorCode::SchemaViolation, tctx + ": runtime_limit must be > 0");
  }
  if (task.is_guidestar == task.reference_energy.has_value()) {
    throw Error(ErrorCode::SchemaViolation,
                tctx + ": a task is a guidestar exactly when it has no reference_energy");
  }
  return task;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Solved: return "solved";
    case Verdict::Unsolved: return "unsolved";
    case Verdict::Unlabeled: return "unlabeled";
  }
  return "unlabeled";
}

Verdict verdict_from_string(std::string_view text) {
  if (text == "solved") return Verdict::Solved;
  if (text == "unsolved") return Verdict::Unsolved;
  if (text == "unlabeled") return Verdict::Unlabeled;
  throw Error(ErrorCode::SchemaViolation, "unknown verdict '" + std::string(text) + "'");
}

const SolutionEntry* SolutionFile::find(const std::string& task_uuid) const {
  auto it = std::find_if(results.begin(), results.end(),
                         [&](const SolutionEntry& e) { return e.task_uuid == task_uuid; });
  return it == results.end() ? nullptr : &*it;
}

ProblemInstance parse_instance(const std::string& json_text, const fs::path& source,
                               const LoadOptions& options) {
  const json doc = parse_json(json_text, source);
  const std::string ctx = source.empty() ? std::string("instance") : source.string();
  ProblemInstance inst;
  inst.source = source;
  inst.instance_uuid = require_string(doc, "instance_uuid", ctx);
  inst.short_name =
      doc.contains("short_name") && doc.at("short_name").is_string()
          ? doc.at("short_name").get<std::string>()
          : inst.instance_uuid;
  const json& tasks = require(doc, "tasks", ctx);
  if (!tasks.is_array() || tasks.empty()) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": 'tasks' must be a non-empty array");
  }
  std::set<std::string> seen;
  for (const json& t : tasks) {
    Task task = parse_task(t, ctx, options);
    if (!seen.insert(task.task_uuid).second) {
      throw Error(ErrorCode::DuplicateTaskUuid, ctx + ": task_uuid '" + task.task_uuid +
                                                    "' appears more than once");
    }
    if (task.fcidump_path.is_relative() && !source.empty()) {
      task.fcidump_path = source.parent_path() / task.fcidump_path;
    }
    inst.tasks.push_back(std::move(task));
  }
  return inst;
}

ProblemInstance load_instance(const fs::path& path, const LoadOptions& options) {
  return parse_instance(read_text(path), path, options);
}

SolutionFile parse_solution(const std::string& json_text, const fs::path& source) {
  const json doc = parse_json(json_text, source);
  const std::string ctx = source.empty() ? std::string("solution") : source.string();
  SolutionFile sol;
  sol.source = source;
  sol.solver_uuid = require_string(doc, "solver_uuid", ctx);
  sol.solver_short_name =
      doc.contains("solver_short_name") && doc.at("solver_short_name").is_string()
          ? doc.at("solver_short_name").get<std::string>()
          : sol.solver_uuid;
  const json& results = require(doc, "results", ctx);
  if (!results.is_array()) {
    throw Error(ErrorCode::SchemaViolation, ctx + ": 'results' must be an array");
  }
  std::set<std::string> seen;
  for (const json& r : results) {
    SolutionEntry entry;
    entry.task_uuid = require_string(r, "task_uuid", ctx);
    const std::string rctx = ctx + " result '" + entry.task_uuid + "'";
    entry.energy = optional_number(r, "energy", rctx);
    entry.attempted = optional_bool(r, "attempted", rctx).value_or(entry.energy.has_value());
    entry.run_time = optional_number(r, "run_time", rctx).value_or(0.0);
    if (entry.attempted && !entry.energy) {
      throw Error(ErrorCode::SchemaViolation, rctx + ": attempted result needs an energy");
    }
    if (entry.attempted && entry.run_time < 0.0) {
      throw Error(ErrorCode::SchemaViolation, rctx + ": run_time must be >= 0");
    }
    if (!seen.insert(entry.task_uuid).second) {
      throw Error(ErrorCode::DuplicateTaskUuid,
                  ctx + ": task_uuid '" + entry.task_uuid + "' reported twice");
    }
    sol.results.push_back(std::move(entry));
  }
  return sol;
}

SolutionFile load_solution(const fs::path& path) {
  return parse_solution(read_text(path), path);
}

TaskOutcome missing_outcome(const Task& task) {
  TaskOutcome out;
  out.task_uuid = task.task_uuid;
  out.verdict = task.is_guidestar ? Verdict::Unlabeled : Verdict::Unsolved;
  return out;
}

TaskOutcome evaluate_task(const Task& task, const SolutionEntry& result) {
  if (result.task_uuid != task.task_uuid) {
    throw Error(ErrorCode::TaskMismatch, "result for '" + result.task_uuid +
                                             "' evaluated against task '" +
                                             task.task_uuid + "'");
  }
  TaskOutcome out;
  out.task_uuid = task.task_uuid;
  out.attempted = result.attempted;
  out.within_runtime = result.attempted && result.run_time <= task.runtime_limit;
  if (result.attempted && task.reference_energy && result.energy) {
    out.abs_error = std::abs(*result.energy - *task.reference_energy);
  }
  if (task.is_guidestar) {
    out.verdict = Verdict::Unlabeled;
  } else if (out.abs_error && *out.abs_error <= task.accuracy_tol && out.within_runtime) {
    out.verdict = Verdict::Solved;
  } else {
    out.verdict = Verdict::Unsolved;
  }
  return out;
}

std::vector<Catalog::TaskRef> Catalog::tasks() const {
  std::vector<TaskRef> out;
  for (const auto& inst : instances) {
    for (const auto& task : inst.tasks) out.push_back({&inst, &task});
  }
  return out;
}

const Task* Catalog::find_task(const std::string& task_uuid) const {
  for (const auto& inst : instances) {
    for (const auto& task : inst.tasks) {
      if (task.task_uuid == task_uuid) return &task;
    }
  }
  return nullptr;
}

namespace {

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<fs::path> find_files(const fs::path& root, std::string_view suffix) {
  std::vector<fs::path> out;
  if (!fs::is_directory(root)) {
    throw Error(ErrorCode::Io, "'" + root.string() + "' is not a directory");
  }
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && ends_with(entry.path().filename().string(), suffix)) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SolutionFile> scan_solutions(const fs::path& root) {
  std::vector<SolutionFile> out;
  for (const auto& path : find_files(root, ".solution.json")) {
    out.push_back(load_solution(path));
  }
  return out;
}

Catalog scan_catalog(const fs::path& root, const LoadOptions& options) {
  Catalog cat;
  std::set<std::string> instance_ids;
  std::set<std::string> task_ids;
  for (const auto& path : find_files(root, ".problem.json")) {
    ProblemInstance inst = load_instance(path, options);
    if (!instance_ids.insert(inst.instance_uuid).second) {
      throw Error(ErrorCode::DuplicateInstanceUuid,
                  "instance_uuid '" + inst.instance_uuid + "' appears in several files");
    }
    for (const auto& task : inst.tasks) {
      if (!task_ids.insert(task.task_uuid).second) {
        throw Error(ErrorCode::DuplicateTaskUuid,
                    "task_uuid '" + task.task_uuid + "' appears in several instances");
      }
    }
    cat.instances.push_back(std::move(inst));
  }
  cat.solutions = scan_solutions(root);
  return cat;
}

SolverEvaluation evaluate_solution(const Catalog& catalog, const SolutionFile& solution) {
  SolverEvaluation eval;
  eval.solver_uuid = solution.solver_uuid;
  eval.solver_short_name = solution.solver_short_name;
  std::set<std::string> known;
  for (const auto& ref : catalog.tasks()) {
    const Task& task = *ref.task;
    known.insert(task.task_uuid);
    const SolutionEntry* entry = solution.find(task.task_uuid);
    TaskOutcome out = entry ? evaluate_task(task, *entry) : missing_outcome(task);
    if (out.attempted) ++eval.tasks_attempted;
    if (out.verdict == Verdict::Solved) ++eval.tasks_solved;
    if (out.verdict != Verdict::Unlabeled) ++eval.tasks_labeled;
    eval.outcomes.push_back(std::move(out));
  }
  for (const auto& entry : solution.results) {
    if (!known.count(entry.task_uuid)) eval.unmatched_task_uuids.push_back(entry.task_uuid);
  }
  return eval;
}

}  // namespace gsee
