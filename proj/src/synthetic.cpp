#include "gsee/synthetic.hpp"

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>

#include "gsee/catalog.hpp"
#include "gsee/error.hpp"
#include "gsee/fci_oracle.hpp"

namespace gsee {

namespace fs = std::filesystem;

FciDump random_fcidump(int norb, int nelec, std::uint64_t seed, int rank) {
  FciDump dump(norb, nelec, nelec % 2);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (rank <= 0) rank = norb;

  Eigen::MatrixXd h1(norb, norb);
  for (int i = 0; i < norb; ++i) {
    for (int j = 0; j <= i; ++j) {
      h1(i, j) = h1(j, i) = i == j ? -2.0 + 0.5 * i + 0.2 * normal(rng) : 0.1 * normal(rng);
    }
  }
  for (int i = 0; i < norb; ++i) {
    for (int j = 0; j <= i; ++j) dump.set_h1(i, j, h1(i, j));
  }

  std::vector<Eigen::MatrixXd> factors;
  std::vector<double> weights;
  for (int l = 0; l < rank; ++l) {
    Eigen::MatrixXd g(norb, norb);
    for (int i = 0; i < norb; ++i) {
      for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = normal(rng) * (i == j ? 1.0 : 0.3);
    }
    factors.push_back(g);
    weights.push_back(0.2 + 0.3 * unif(rng));
  }
  for (int i = 0; i < norb; ++i) {
    for (int j = 0; j <= i; ++j) {
      for (int k = 0; k < norb; ++k) {
        for (int l = 0; l <= k; ++l) {
          if (FciDump::pair_index(i, j) < FciDump::pair_index(k, l)) continue;
          double v = 0.0;
          for (int r = 0; r < rank; ++r) v += weights[static_cast<std::size_t>(r)] * factors[static_cast<std::size_t>(r)](i, j) * factors[static_cast<std::size_t>(r)](k, l);
          dump.set_h2(i, j, k, l, v);
        }
      }
    }
  }
  dump.set_e_core(1.0 + unif(rng));
  return dump;
}

namespace {

std::string uuid_for(int kind, int index) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "00000000-0000-4000-8%03d-%012d", kind, index);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << text;
}

struct PlannedTask {
  std::string uuid;
  int norb = 0;
  std::optional<double> reference;
  double oracle_e0 = 0.0;
};

}  // namespace

void write_synthetic_catalog(const fs::path& root, const SyntheticCatalogOptions& options) {
  fs::create_directories(root / "instances");
  fs::create_directories(root / "solutions");
  std::vector<PlannedTask> planned;
  int task_counter = 0;
  for (int inst = 0; inst < options.n_instances; ++inst) {
    const int norb = 2 + inst % 5;
    const bool guidestar = inst == options.n_instances - 1;
    char name[32];
    std::snprintf(name, sizeof name, "inst_%02d", inst);
    const fs::path dir = root / "instances" / name;
    fs::create_directories(dir);

    nlohmann::ordered_json problem;
    problem["instance_uuid"] = uuid_for(1, inst);
    problem["short_name"] = name;
    problem["tasks"] = nlohmann::ordered_json::array();
    for (int variant = 0; variant < 2; ++variant) {
      const int nelec = variant == 0 ? norb : 2;
      const FciDump dump =
          random_fcidump(norb, nelec, options.seed * 1000003ULL + static_cast<std::uint64_t>(task_counter));
      const std::string file = std::string("task_") + char('a' + variant) + ".fcidump";
      write_fcidump(dump, (dir / file).string());

      PlannedTask t;
      t.uuid = uuid_for(2, task_counter++);
      t.norb = norb;
      t.oracle_e0 = solve_fci(dump).spectrum.energies.front();
      nlohmann::ordered_json task;
      task["task_uuid"] = t.uuid;
      task["fcidump"] = file;
      task["accuracy_tol"] = kChemicalAccuracy;
      task["runtime_limit"] = 3600.0;
      if (guidestar) {
        task["is_guidestar"] = true;
      } else {
        t.reference = t.oracle_e0;
        task["reference_energy"] = t.oracle_e0;
        task["reference_provenance"] = "fci-oracle";
      }
      problem["tasks"].push_back(task);
      planned.push_back(t);
    }
    write_text(dir / (std::string(name) + ".problem.json"), problem.dump(2) + "\n");
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> noise(-3e-3, 3e-3);
  auto solver_file = [&](int id, const std::string& short_name, auto&& entry) {
    nlohmann::ordered_json sol;
    sol["solver_uuid"] = uuid_for(3, id);
    sol["solver_short_name"] = short_name;
    sol["results"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < planned.size(); ++i) {
      nlohmann::ordered_json r = entry(planned[i], i);
      if (!r.is_null()) sol["results"].push_back(r);
    }
    write_text(root / "solutions" / (short_name + ".solution.json"), sol.dump(2) + "\n");
  };

  // Reports the oracle energy everywhere: every labeled task solved.
  solver_file(0, "exact", [](const PlannedTask& t, std::size_t) {
    return nlohmann::ordered_json{{"task_uuid", t.uuid}, {"energy", t.oracle_e0}, {"run_time", 1.0}};
  });
  // Accurate on small active spaces only.
  solver_file(1, "truncated", [](const PlannedTask& t, std::size_t) {
    const double err = t.norb <= 4 ? 4e-4 : 3e-3;
    return nlohmann::ordered_json{{"task_uuid", t.uuid}, {"energy", t.oracle_e0 + err},
                                  {"run_time", 10.0 * t.norb}};
  });
  // Random errors, one skipped task, one overlong run.
  solver_file(2, "noisy", [&](const PlannedTask& t, std::size_t i) {
    const double err = noise(rng);
    if (i == 3) return nlohmann::ordered_json{{"task_uuid", t.uuid}, {"attempted", false}};
    const double run_time = i == 5 ? 7200.0 : 60.0;
    return nlohmann::ordered_json{{"task_uuid", t.uuid}, {"energy", t.oracle_e0 + err},
                                  {"run_time", run_time}};
  });
}

}  // namespace gsee
