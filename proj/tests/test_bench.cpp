#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gsee/bench.hpp"
#include "gsee/error.hpp"
#include "gsee/fcidump.hpp"
#include "gsee/qubit_features.hpp"
#include "gsee/synthetic.hpp"

using namespace gsee;
namespace fs = std::filesystem;

namespace {

class Scratch {
 public:
  Scratch() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("gsee_") + info->test_suite_name() + "_" + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  ~Scratch() { fs::remove_all(root_); }
  const fs::path& root() const { return root_; }

 private:
  fs::path root_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines_of(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

RunConfig config_for(const fs::path& catalog, const fs::path& out) {
  RunConfig c;
  c.catalog_dir = catalog;
  c.output_dir = out;
  c.n_samples = 400;
  return c;
}

void write_single_task_catalog(const fs::path& root) {
  fs::create_directories(root);
  write_fcidump(random_fcidump(3, 2, 42), (root / "one.fcidump").string());
  std::ofstream(root / "one.problem.json")
      << R"({"instance_uuid":"00000000-0000-4000-8000-000000000001","short_name":"one",)"
      << R"("tasks":[{"task_uuid":"00000000-0000-4000-8000-000000000002","fcidump":"one.fcidump"}]})";
}

std::map<std::string, std::string> outputs(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().filename() != "run.log") {
      files[fs::relative(e.path(), dir).generic_string()] = slurp(e.path());
    }
  }
  return files;
}

}  // namespace

TEST(Config, HashIgnoresOutputAndJobs) {
  RunConfig a;
  a.catalog_dir = "cat";
  a.output_dir = "out1";
  RunConfig b = a;
  b.output_dir = "elsewhere";
  b.jobs = 8;
  EXPECT_EQ(a.hash(), b.hash());
  b.seed = 1;
  EXPECT_NE(a.hash(), b.hash());
  EXPECT_EQ(a.hash().size(), 16u);
  EXPECT_EQ(a.header(), "gsee-bench 0.1.0 config=" + a.hash());
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Config, ValidationRejectsBadSettings) {
  Scratch s;
  RunConfig c = config_for(s.root(), s.root() / "out");
  EXPECT_NO_THROW(c.validate());
  auto rejects = [](RunConfig bad) {
    try {
      bad.validate();
    } catch (const Error& e) {
      return e.code() == ErrorCode::InvalidConfig;
    }
    return false;
  };
  RunConfig bad = c;
  bad.threshold = 1.5;
  EXPECT_TRUE(rejects(bad));
  bad = c;
  bad.catalog_dir = s.root() / "missing";
  EXPECT_TRUE(rejects(bad));
  bad = c;
  bad.features = {"not_a_feature"};
  EXPECT_TRUE(rejects(bad));
  bad = c;
  bad.holdout_fraction = 1.0;
  EXPECT_TRUE(rejects(bad));
}

TEST(Features, SingleTaskCatalog) {
  Scratch s;
  write_single_task_catalog(s.root() / "cat");
  RunLog log(false);
  const FeaturesResult r = run_features(config_for(s.root() / "cat", s.root() / "out"), log);
  EXPECT_EQ(r.table.values.rows(), 1);
  EXPECT_EQ(r.table.values.cols(), static_cast<Eigen::Index>(FeatureVector::kSize));
  const auto lines = lines_of(s.root() / "out" / "features.csv");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0].rfind("# gsee-bench 0.1.0 config=", 0), 0u);
  EXPECT_EQ(lines[1].rfind("# qubit_ordering=interleaved", 0), 0u);
  EXPECT_EQ(std::count(lines[2].begin(), lines[2].end(), ','), 1 + static_cast<long>(FeatureVector::kSize));
  EXPECT_FALSE(fs::exists(s.root() / "out" / "correlation.csv"));
  EXPECT_EQ(log.warnings(), 1u);

  const FeatureTable back = read_features_csv(s.root() / "out" / "features.csv");
  EXPECT_EQ(back.task_uuid, r.table.task_uuid);
  EXPECT_LE((back.values - r.table.values).cwiseAbs().maxCoeff(), 1e-12 * (1 + r.table.values.cwiseAbs().maxCoeff()));
}

TEST(Features, UnreadableDumpLoggedAndSkipped) {
  Scratch s;
  const fs::path cat = s.root() / "cat";
  write_synthetic_catalog(cat, {2, 3});
  std::ofstream(cat / "instances" / "inst_00" / "task_b.fcidump") << "garbage\n";
  RunLog log(false);
  const FeaturesResult r = run_features(config_for(cat, s.root() / "out"), log);
  EXPECT_EQ(r.table.values.rows(), 3);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_NE(r.failures[0].find("00000000-0000-4000-8002-000000000001"), std::string::npos);
  EXPECT_GE(log.warnings(), 1u);
  EXPECT_TRUE(fs::exists(s.root() / "out" / "correlation.csv"));
}

TEST(Features, EmptyCatalogThrows) {
  Scratch s;
  RunLog log(false);
  try {
    run_features(config_for(s.root(), s.root() / "out"), log);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyCatalog);
  }
}

TEST(Evaluate, NoSolutionsWarns) {
  Scratch s;
  write_single_task_catalog(s.root() / "cat");
  RunLog log(false);
  const auto evals = run_evaluate(config_for(s.root() / "cat", s.root() / "out"), log);
  EXPECT_TRUE(evals.empty());
  EXPECT_EQ(log.warnings(), 1u);
  EXPECT_EQ(lines_of(s.root() / "out" / "summary.csv").size(), 2u);
}

TEST(Report, SyntheticCatalogEndToEnd) {
  Scratch s;
  const fs::path cat = s.root() / "cat";
  write_synthetic_catalog(cat);
  RunConfig c = config_for(cat, s.root() / "out");
  RunLog log(false);
  run_report(c, log);

  const auto summary = lines_of(c.output_dir / "summary.csv");
  ASSERT_EQ(summary.size(), 5u);
  EXPECT_EQ(summary[2].substr(summary[2].find(',') + 1), "exact,20,18,18");

  const auto exact = nlohmann::json::parse(slurp(c.output_dir / "solvability" / "exact.json"));
  EXPECT_EQ(exact["solvability_ratio"].get<double>(), 1.0);
  for (const char* stem : {"exact", "truncated", "noisy"}) {
    const std::string svg = slurp(c.output_dir / "solvability" / (std::string(stem) + ".svg"));
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("gsee-bench 0.1.0 config=" + c.hash()), std::string::npos);
    std::size_t stars = 0;
    for (auto p = svg.find("class=\"guidestar\""); p != std::string::npos; p = svg.find("class=\"guidestar\"", p + 1)) ++stars;
    EXPECT_EQ(stars, 2u) << stem;
  }
  const auto oracle = nlohmann::json::parse(slurp(c.output_dir / "oracle.json"));
  EXPECT_EQ(oracle["results"].size(), 20u);
  EXPECT_TRUE(fs::exists(c.output_dir / "run.log"));
  for (const auto& [name, text] : outputs(c.output_dir)) {
    EXPECT_NE(text.find(c.hash()), std::string::npos) << name;
  }
}

TEST(Report, DeterministicAcrossRunsAndJobs) {
  Scratch s;
  const fs::path cat = s.root() / "cat";
  write_synthetic_catalog(cat, {6, 11});
  RunConfig a = config_for(cat, s.root() / "a");
  RunConfig b = config_for(cat, s.root() / "b");
  b.jobs = 3;
  RunConfig c = config_for(cat, s.root() / "c");
  RunLog log(false);
  run_report(a, log);
  run_report(b, log);
  run_report(c, log);
  const auto fa = outputs(a.output_dir);
  EXPECT_EQ(fa, outputs(b.output_dir));
  EXPECT_EQ(fa, outputs(c.output_dir));
  EXPECT_GE(fa.size(), 10u);
}

TEST(Solvability, SolverFilterAndFeatureSubset) {
  Scratch s;
  const fs::path cat = s.root() / "cat";
  write_synthetic_catalog(cat);
  RunConfig c = config_for(cat, s.root() / "out");
  RunLog log(false);
  run_features(c, log);
  run_evaluate(c, log);
  c.solver = "truncated";
  c.features = {"n_spin_orbitals", "log_fci_size", "n_pauli_strings"};
  const auto runs = run_solvability(c, log);
  ASSERT_EQ(runs.size(), 1u);
  ASSERT_TRUE(runs[0].report.has_value());
  EXPECT_FALSE(runs[0].report->attributions_skipped);
  EXPECT_EQ(runs[0].report->attributions.size(), 3);
  c.solver = "nobody";
  EXPECT_THROW(run_solvability(c, log), Error);
}
