#include "gsee/bench.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "gsee/error.hpp"
#include "gsee/fci_oracle.hpp"
#include "gsee/fcidump.hpp"
#include "gsee/qubit_features.hpp"
#include "gsee/svg.hpp"

namespace gsee {

namespace fs = std::filesystem;

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::InvalidConfig, what); };
  if (catalog_dir.empty()) fail("--catalog is required");
  if (!fs::is_directory(catalog_dir)) fail("catalog directory " + catalog_dir.string() + " does not exist");
  if (output_dir.empty()) fail("--out is required");
  if (!solutions_dir.empty() && !fs::is_directory(solutions_dir)) {
    fail("solutions directory " + solutions_dir.string() + " does not exist");
  }
  if (!(df_threshold >= 0.0)) fail("df threshold must be non-negative");
  if (!(threshold >= 0.0 && threshold <= 1.0)) fail("threshold must lie in [0, 1]");
  if (latent_dim < 1) fail("latent dimension must be positive");
  if (n_samples < 1) fail("sample count must be positive");
  if (jobs < 1) fail("jobs must be positive");
  if (!(holdout_fraction >= 0.0 && holdout_fraction < 1.0)) fail("holdout fraction must lie in [0, 1)");
  for (const auto& f : features) {
    bool known = false;
    for (auto name : FeatureVector::kNames) known = known || name == f;
    if (!known) fail("unknown feature column '" + f + "'");
  }
}

std::string RunConfig::canonical() const {
  std::ostringstream out;
  out << "catalog=" << catalog_dir.lexically_normal().generic_string() << '\n'
      << "solutions=" << solutions_dir.lexically_normal().generic_string() << '\n'
      << "df_threshold=" << format_real(df_threshold) << '\n'
      << "df_mode=" << (df_mode == DfThresholdMode::Relative ? "relative" : "absolute") << '\n'
      << "latent=" << (latent == LatentKind::PCA ? "pca" : "nnmf") << '\n'
      << "latent_dim=" << latent_dim << '\n'
      << "samples=" << n_samples << '\n'
      << "threshold=" << format_real(threshold) << '\n'
      << "seed=" << seed << '\n'
      << "solver=" << solver << '\n'
      << "features=";
  for (std::size_t i = 0; i < features.size(); ++i) out << (i ? "," : "") << features[i];
  out << '\n' << "holdout_fraction=" << format_real(holdout_fraction) << '\n';
  return out.str();
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(canonical())));
  return buf;
}

std::string RunConfig::header() const {
  return std::string(kToolName) + " " + std::string(kToolVersion) + " config=" + hash();
}

void RunLog::append(const std::string& line) {
  std::lock_guard lock(mutex_);
  lines_.push_back(line);
  if (echo_) std::cerr << line << '\n';
}

void RunLog::info(const std::string& message) { append("info: " + message); }

void RunLog::warn(const std::string& message) {
  append("warning: " + message);
  std::lock_guard lock(mutex_);
  ++warnings_;
}

std::vector<std::string> RunLog::lines() const {
  std::lock_guard lock(mutex_);
  return lines_;
}

std::size_t RunLog::warnings() const {
  std::lock_guard lock(mutex_);
  return warnings_;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

// Data lines of a CSV written by this tool: comment lines dropped.
std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    rows.push_back(split_csv(line));
  }
  return rows;
}

template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& body) {
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

Catalog load_catalog(const RunConfig& config) {
  Catalog catalog = scan_catalog(config.catalog_dir);
  if (catalog.tasks().empty()) {
    throw Error(ErrorCode::EmptyCatalog, "no tasks under " + config.catalog_dir.string());
  }
  return catalog;
}

nlohmann::ordered_json generator_json(const RunConfig& config) {
  return {{"tool", kToolName}, {"version", kToolVersion}, {"config_hash", config.hash()}};
}

nlohmann::ordered_json metrics_json(const ClassificationMetrics& m) {
  return {{"tp", m.tp},
          {"fp", m.fp},
          {"fn", m.fn},
          {"tn", m.tn},
          {"precision", m.precision},
          {"recall", m.recall},
          {"f1", m.f1},
          {"accuracy", m.accuracy},
          {"precision_undefined", m.precision_undefined},
          {"recall_undefined", m.recall_undefined},
          {"f1_undefined", m.f1_undefined}};
}

template <typename Derived>
nlohmann::ordered_json vector_json(const Eigen::DenseBase<Derived>& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::string stem_for(const std::string& short_name, std::set<std::string>& used) {
  std::string stem;
  for (char c : short_name) {
    stem += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  }
  if (stem.empty()) stem = "solver";
  std::string candidate = stem;
  for (int k = 2; used.count(candidate); ++k) candidate = stem + "_" + std::to_string(k);
  used.insert(candidate);
  return candidate;
}

}  // namespace

FeatureTable read_features_csv(const fs::path& path) {
  const auto rows = read_csv(path);
  if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "instance_uuid" || rows[0][1] != "task_uuid") {
    throw Error(ErrorCode::Io, path.string() + " is not a features table");
  }
  FeatureTable table;
  table.columns.assign(rows[0].begin() + 2, rows[0].end());
  const auto d = static_cast<Eigen::Index>(table.columns.size());
  table.values.resize(static_cast<Eigen::Index>(rows.size() - 1), d);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (static_cast<Eigen::Index>(rows[r].size()) != d + 2) {
      throw Error(ErrorCode::Io, path.string() + ": row " + std::to_string(r) + " has the wrong width");
    }
    table.instance_uuid.push_back(rows[r][0]);
    table.task_uuid.push_back(rows[r][1]);
    for (Eigen::Index c = 0; c < d; ++c) {
      table.values(static_cast<Eigen::Index>(r - 1), c) = parse_real(rows[r][static_cast<std::size_t>(c + 2)]);
    }
  }
  return table;
}

FeaturesResult run_features(const RunConfig& config, RunLog& log) {
  const Catalog catalog = load_catalog(config);
  const auto refs = catalog.tasks();
  std::vector<std::optional<FeatureVector>> computed(refs.size());
  std::vector<std::string> errors(refs.size());
  const FeatureOptions options{DfOptions{config.df_threshold, config.df_mode}};
  parallel_for(refs.size(), config.jobs, [&](std::size_t i) {
    try {
      computed[i] = compute_features(read_fcidump(refs[i].task->fcidump_path.string()), options);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  FeaturesResult result;
  result.table.columns.assign(FeatureVector::kNames.begin(), FeatureVector::kNames.end());
  std::vector<FeatureVector> rows;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!computed[i]) {
      result.failures.push_back(refs[i].task->task_uuid + ": " + errors[i]);
      log.warn("features failed for task " + refs[i].task->task_uuid + ": " + errors[i]);
      continue;
    }
    result.table.instance_uuid.push_back(refs[i].instance->instance_uuid);
    result.table.task_uuid.push_back(refs[i].task->task_uuid);
    rows.push_back(*computed[i]);
  }
  const auto d = static_cast<Eigen::Index>(FeatureVector::kSize);
  result.table.values.resize(static_cast<Eigen::Index>(rows.size()), d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    result.table.values.row(static_cast<Eigen::Index>(r)) = rows[r].values.transpose();
  }

  const std::string header = "# " + config.header() + "\n";
  std::ostringstream csv;
  // Qubit features depend on the spin-orbital ordering of the encoding.
  csv << header << "# qubit_ordering=interleaved (qubit 2p: orbital p alpha, 2p+1: beta)\n"
      << "instance_uuid,task_uuid";
  for (auto name : FeatureVector::kNames) csv << ',' << name;
  csv << '\n';
  for (std::size_t r = 0; r < rows.size(); ++r) {
    csv << csv_field(result.table.instance_uuid[r]) << ',' << csv_field(result.table.task_uuid[r]);
    for (Eigen::Index c = 0; c < d; ++c) csv << ',' << format_real(result.table.values(static_cast<Eigen::Index>(r), c));
    csv << '\n';
  }
  write_file(config.output_dir / "features.csv", csv.str());

  if (rows.size() >= 2) {
    const CorrelationResult corr = correlation_matrix(result.table.values);
    std::ostringstream out;
    out << header << "feature";
    for (auto name : FeatureVector::kNames) out << ',' << name;
    out << '\n';
    for (Eigen::Index r = 0; r < d; ++r) {
      out << FeatureVector::kNames[static_cast<std::size_t>(r)];
      for (Eigen::Index c = 0; c < d; ++c) out << ',' << format_real(corr.matrix(r, c));
      out << '\n';
    }
    write_file(config.output_dir / "correlation.csv", out.str());
  } else {
    log.warn("correlation matrix needs at least two feature rows; correlation.csv not written");
  }

  std::map<int, int> bins;
  int max_bin = 0;
  const auto so = static_cast<Eigen::Index>(FeatureVector::index_of("n_spin_orbitals"));
  for (Eigen::Index r = 0; r < result.table.values.rows(); ++r) {
    const int norb = static_cast<int>(std::lround(result.table.values(r, so))) / 2;
    ++bins[norb / 10];
    max_bin = std::max(max_bin, norb / 10);
  }
  std::ostringstream hist;
  hist << header << "norb_min,norb_max,count\n";
  for (int b = 0; b <= max_bin && !rows.empty(); ++b) {
    hist << b * 10 << ',' << b * 10 + 9 << ',' << bins[b] << '\n';
  }
  write_file(config.output_dir / "norb_histogram.csv", hist.str());

  log.info("features: " + std::to_string(rows.size()) + " rows, " +
           std::to_string(result.failures.size()) + " failures");
  return result;
}

std::vector<SolverEvaluation> run_evaluate(const RunConfig& config, RunLog& log) {
  const Catalog catalog = load_catalog(config);
  const std::vector<SolutionFile> solutions =
      config.solutions_dir.empty() ? catalog.solutions : scan_solutions(config.solutions_dir);
  if (solutions.empty()) log.warn("no solution files found; outcomes are empty");

  std::vector<SolverEvaluation> evals;
  for (const auto& sol : solutions) {
    evals.push_back(evaluate_solution(catalog, sol));
    for (const auto& u : evals.back().unmatched_task_uuids) {
      log.warn("solver " + sol.solver_uuid + " reports unknown task " + u);
    }
  }

  const auto refs = catalog.tasks();
  const std::string header = "# " + config.header() + "\n";
  std::ostringstream outcomes, summary;
  outcomes << header << "solver_uuid,solver_short_name,task_uuid,verdict,abs_error,within_runtime,attempted\n";
  summary << header << "solver_uuid,solver_short_name,tasks_attempted,tasks_solved,tasks_labeled\n";
  for (const auto& e : evals) {
    for (const auto& o : e.outcomes) {
      outcomes << csv_field(e.solver_uuid) << ',' << csv_field(e.solver_short_name) << ','
               << csv_field(o.task_uuid) << ',' << to_string(o.verdict) << ','
               << (o.abs_error ? format_real(*o.abs_error) : "") << ','
               << (o.within_runtime ? "true" : "false") << ',' << (o.attempted ? "true" : "false") << '\n';
    }
    summary << csv_field(e.solver_uuid) << ',' << csv_field(e.solver_short_name) << ','
            << e.tasks_attempted << ',' << e.tasks_solved << ',' << e.tasks_labeled << '\n';
  }
  write_file(config.output_dir / "outcomes.csv", outcomes.str());
  write_file(config.output_dir / "summary.csv", summary.str());
  log.info("evaluate: " + std::to_string(evals.size()) + " solvers over " + std::to_string(refs.size()) + " tasks");
  return evals;
}

nlohmann::ordered_json report_to_json(const SolvabilityReport& report,
                                      const std::vector<std::string>& feature_names) {
  using json = nlohmann::ordered_json;
  json j;
  j["solvability_ratio"] = report.solvability_ratio;
  j["n_samples"] = report.n_samples;
  j["threshold"] = report.threshold;
  j["seed"] = report.seed;

  json latent;
  latent["kind"] = report.latent_kind == LatentKind::PCA ? "pca" : "nnmf";
  latent["dim"] = report.latent_dim;
  latent["grid_resolution"] = report.grid_resolution;
  latent["lower"] = vector_json(report.latent.lower);
  latent["upper"] = vector_json(report.latent.upper);
  if (report.latent_kind == LatentKind::PCA) {
    latent["explained_variance_ratio"] = vector_json(report.latent.explained_variance_ratio);
  } else {
    latent["iterations"] = report.latent.n_iterations;
    latent["converged"] = report.latent.converged;
    latent["reconstruction_error"] = report.latent.reconstruction_error;
  }
  j["latent"] = latent;

  j["n_train"] = report.n_train;
  j["n_holdout"] = report.n_holdout;
  j["n_unlabeled"] = report.n_unlabeled;
  j["metrics"] = metrics_json(report.metrics);
  j["holdout_metrics"] = report.holdout_metrics ? metrics_json(*report.holdout_metrics) : json(nullptr);

  json clf;
  if (report.model) {
    const SvmModel& m = *report.model;
    clf["kind"] = "rbf-svm";
    clf["c"] = m.svm.c;
    clf["gamma"] = m.svm.gamma;
    clf["n_support"] = m.svm.support_vectors.rows();
    clf["rho"] = m.svm.rho;
    clf["platt_a"] = m.platt.a;
    clf["platt_b"] = m.platt.b;
    clf["training_accuracy"] = m.training_accuracy;
    clf["degenerate"] = m.degenerate;
    json folds = json::array();
    for (const auto& f : m.cv_metrics) folds.push_back(metrics_json(f));
    clf["cv_folds"] = folds;
    json grid = json::array();
    for (const auto& g : m.grid) grid.push_back({{"c", g.c}, {"gamma", g.gamma}, {"mean_f1", g.mean_f1}});
    clf["grid"] = grid;
  } else {
    clf["kind"] = "constant";
    clf["label"] = report.constant_label.value_or(false) ? "solved" : "unsolved";
  }
  j["classifier"] = clf;

  j["features"] = feature_names;
  if (report.attributions_skipped) {
    j["attributions"] = nullptr;
  } else {
    json attr;
    for (std::size_t i = 0; i < feature_names.size(); ++i) {
      attr[feature_names[i]] = report.attributions(static_cast<Eigen::Index>(i));
    }
    j["attributions"] = attr;
  }
  j["attributions_skipped"] = report.attributions_skipped;
  j["shapley_points"] = report.shapley_points;
  j["shapley_efficiency_error"] = report.shapley_efficiency_error;
  j["notes"] = report.notes;
  return j;
}

std::vector<SolvabilityRun> run_solvability(const RunConfig& config, RunLog& log) {
  const FeatureTable table = read_features_csv(config.output_dir / "features.csv");
  const auto outcome_rows = read_csv(config.output_dir / "outcomes.csv");

  struct SolverLabels {
    std::string uuid, short_name;
    std::map<std::string, Verdict> verdicts;
  };
  std::vector<SolverLabels> solvers;
  for (std::size_t r = 1; r < outcome_rows.size(); ++r) {
    const auto& row = outcome_rows[r];
    if (row.size() < 4) throw Error(ErrorCode::Io, "outcomes.csv row " + std::to_string(r) + " is short");
    if (solvers.empty() || solvers.back().uuid != row[0]) solvers.push_back({row[0], row[1], {}});
    solvers.back().verdicts[row[2]] = verdict_from_string(row[3]);
  }
  if (!config.solver.empty()) {
    std::erase_if(solvers, [&](const SolverLabels& s) {
      return s.uuid != config.solver && s.short_name != config.solver;
    });
    if (solvers.empty()) throw Error(ErrorCode::InvalidConfig, "no outcomes for solver " + config.solver);
  }

  std::vector<std::string> names = config.features;
  if (names.empty()) names = table.columns;
  std::vector<Eigen::Index> cols;
  for (const auto& n : names) {
    const auto it = std::find(table.columns.begin(), table.columns.end(), n);
    if (it == table.columns.end()) throw Error(ErrorCode::InvalidConfig, "features.csv lacks column " + n);
    cols.push_back(it - table.columns.begin());
  }
  Eigen::MatrixXd x(table.values.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) x.col(static_cast<Eigen::Index>(c)) = table.values.col(cols[c]);

  std::vector<SolvabilityRun> runs(solvers.size());
  std::set<std::string> used;
  for (std::size_t s = 0; s < solvers.size(); ++s) {
    runs[s].solver_uuid = solvers[s].uuid;
    runs[s].solver_short_name = solvers[s].short_name;
    runs[s].stem = stem_for(solvers[s].short_name, used);
  }

  SolvabilityConfig sc;
  sc.latent = config.latent;
  sc.latent_dim = config.latent_dim;
  sc.n_samples = config.n_samples;
  sc.threshold = config.threshold;
  sc.seed = config.seed;
  sc.holdout_fraction = config.holdout_fraction;
  sc.allow_single_class = true;

  std::vector<std::vector<std::optional<bool>>> labels(solvers.size());
  parallel_for(solvers.size(), config.jobs, [&](std::size_t s) {
    auto& lab = labels[s];
    for (const auto& task : table.task_uuid) {
      const auto it = solvers[s].verdicts.find(task);
      if (it == solvers[s].verdicts.end() || it->second == Verdict::Unlabeled) lab.emplace_back();
      else lab.emplace_back(it->second == Verdict::Solved);
    }
    try {
      runs[s].report = estimate_solvability(x, lab, sc);
    } catch (const std::exception& e) {
      runs[s].failure = e.what();
    }
  });

  const std::string header = config.header();
  for (std::size_t s = 0; s < runs.size(); ++s) {
    const SolvabilityRun& run = runs[s];
    if (!run.report) {
      log.warn("solvability failed for solver " + run.solver_uuid + ": " + run.failure);
      continue;
    }
    const SolvabilityReport& rep = *run.report;
    const fs::path dir = config.output_dir / "solvability";

    nlohmann::ordered_json j;
    j["generator"] = generator_json(config);
    j["solver_uuid"] = run.solver_uuid;
    j["solver_short_name"] = run.solver_short_name;
    j.update(report_to_json(rep, names));
    write_file(dir / (run.stem + ".json"), j.dump(2) + "\n");

    std::ostringstream csv;
    csv << "# " << header << "\nkind,task_uuid";
    for (int a = 0; a < rep.latent_dim; ++a) csv << ",z" << a + 1;
    csv << ",probability,label\n";
    for (Eigen::Index i = 0; i < rep.sample_coords.rows(); ++i) {
      csv << "sample,";
      for (int a = 0; a < rep.latent_dim; ++a) csv << ',' << format_real(rep.sample_coords(i, a));
      csv << ',' << format_real(rep.sample_probability(i)) << ",\n";
    }
    std::vector<PlotMarker> markers;
    for (std::size_t i = 0; i < table.task_uuid.size(); ++i) {
      const auto& l = labels[s][i];
      const std::string label = !l ? "guidestar" : (*l ? "solved" : "unsolved");
      const auto r = static_cast<Eigen::Index>(i);
      csv << "task," << csv_field(table.task_uuid[i]);
      for (int a = 0; a < rep.latent_dim; ++a) csv << ',' << format_real(rep.point_coords(r, a));
      csv << ',' << format_real(rep.point_probability(r)) << ',' << label << '\n';
      if (rep.latent_dim >= 2) {
        markers.push_back({rep.point_coords(r, 0), rep.point_coords(r, 1),
                           !l ? MarkerKind::Guidestar : (*l ? MarkerKind::Solved : MarkerKind::Unsolved),
                           table.task_uuid[i] + " (" + label + ")"});
      }
    }
    write_file(dir / (run.stem + "_latent.csv"), csv.str());

    if (rep.latent_dim >= 2) {
      HeatmapSpec spec;
      char title[160];
      std::snprintf(title, sizeof title, "Solvability map: %s (ratio %.4f)", run.solver_short_name.c_str(),
                    rep.solvability_ratio);
      spec.title = title;
      spec.header_comment = header;
      spec.coords = rep.sample_coords;
      spec.probability = rep.sample_probability;
      spec.grid_resolution = rep.grid_resolution;
      spec.x_min = rep.latent.lower(0);
      spec.x_max = rep.latent.upper(0);
      spec.y_min = rep.latent.lower(1);
      spec.y_max = rep.latent.upper(1);
      for (const auto& m : markers) {
        spec.x_min = std::min(spec.x_min, m.x);
        spec.x_max = std::max(spec.x_max, m.x);
        spec.y_min = std::min(spec.y_min, m.y);
        spec.y_max = std::max(spec.y_max, m.y);
      }
      spec.markers = std::move(markers);
      write_file(dir / (run.stem + ".svg"), latent_heatmap_svg(spec));
    }
    for (const auto& note : rep.notes) log.info(run.solver_short_name + ": " + note);
    char line[200];
    std::snprintf(line, sizeof line, "solvability: %s ratio %.4f over %lld samples",
                  run.solver_short_name.c_str(), rep.solvability_ratio,
                  static_cast<long long>(rep.n_samples));
    log.info(line);
  }
  return runs;
}

std::vector<OracleRow> run_oracle(const RunConfig& config, RunLog& log) {
  const Catalog catalog = load_catalog(config);
  const auto refs = catalog.tasks();
  std::vector<std::optional<OracleRow>> rows(refs.size());
  std::vector<std::string> errors(refs.size());
  parallel_for(refs.size(), config.jobs, [&](std::size_t i) {
    try {
      const OracleResult res = solve_fci(read_fcidump(refs[i].task->fcidump_path.string()));
      OracleRow row;
      row.task_uuid = refs[i].task->task_uuid;
      row.e0 = res.spectrum.energies.at(0);
      if (res.spectrum.energies.size() > 1) {
        row.e1 = res.spectrum.energies[1];
        row.gap = res.spectrum.gap;
      }
      row.dimension = res.dimension;
      row.converged = res.spectrum.converged;
      rows[i] = row;
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<OracleRow> out;
  auto results = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!rows[i]) {
      log.warn("oracle skipped task " + refs[i].task->task_uuid + ": " + errors[i]);
      continue;
    }
    const OracleRow& r = *rows[i];
    nlohmann::ordered_json j{{"task_uuid", r.task_uuid}, {"e0", r.e0}};
    j["e1"] = r.e1 ? nlohmann::ordered_json(*r.e1) : nlohmann::ordered_json(nullptr);
    j["gap"] = r.gap ? nlohmann::ordered_json(*r.gap) : nlohmann::ordered_json(nullptr);
    j["dim"] = r.dimension;
    j["converged"] = r.converged;
    results.push_back(j);
    out.push_back(r);
  }
  nlohmann::ordered_json doc;
  doc["generator"] = generator_json(config);
  doc["results"] = results;
  write_file(config.output_dir / "oracle.json", doc.dump(2) + "\n");
  log.info("oracle: " + std::to_string(out.size()) + " of " + std::to_string(refs.size()) + " tasks solved exactly");
  return out;
}

void run_report(const RunConfig& config, RunLog& log) {
  run_features(config, log);
  run_evaluate(config, log);
  run_solvability(config, log);
  run_oracle(config, log);
  std::ostringstream out;
  out << "# " << config.header() << '\n';
  for (const auto& line : log.lines()) out << line << '\n';
  write_file(config.output_dir / "run.log", out.str());
}

}  // namespace gsee
