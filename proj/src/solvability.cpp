#include "gsee/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "gsee/error.hpp"

namespace gsee {

Eigen::MatrixXd sample_latent(const LatentModel& latent, Eigen::Index n_samples,
                              std::uint64_t seed, int* grid_resolution) {
  if (n_samples < 1) throw Error(ErrorCode::TooFewSamples, "need at least one latent sample");
  const int dim = latent.dim;
  if (latent.lower.size() != dim || latent.upper.size() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "latent bounds missing");
  }
  if (dim == 2) {
    const auto r = static_cast<Eigen::Index>(std::ceil(std::sqrt(static_cast<double>(n_samples))));
    if (grid_resolution) *grid_resolution = static_cast<int>(r);
    auto axis = [&](int a) {
      if (r == 1) {
        return Eigen::VectorXd::Constant(1, 0.5 * (latent.lower(a) + latent.upper(a))).eval();
      }
      return Eigen::VectorXd::LinSpaced(r, latent.lower(a), latent.upper(a)).eval();
    };
    const Eigen::VectorXd a0 = axis(0), a1 = axis(1);
    Eigen::MatrixXd z(r * r, 2);
    for (Eigen::Index i = 0; i < r; ++i) {
      for (Eigen::Index j = 0; j < r; ++j) {
        z(i * r + j, 0) = a0(i);
        z(i * r + j, 1) = a1(j);
      }
    }
    return z;
  }
  if (grid_resolution) *grid_resolution = 0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd z(n_samples, dim);
  for (Eigen::Index i = 0; i < n_samples; ++i) {
    for (int a = 0; a < dim; ++a) {
      z(i, a) = latent.lower(a) + unif(rng) * (latent.upper(a) - latent.lower(a));
    }
  }
  return z;
}

double solvability_ratio(const Eigen::VectorXd& probability, double threshold) {
  if (probability.size() == 0) return 0.0;
  const auto hits = (probability.array() >= threshold).count();
  return static_cast<double>(hits) / static_cast<double>(probability.size());
}

namespace {

Eigen::VectorXd predict_parallel(const BatchModel& model, const Eigen::MatrixXd& x, unsigned jobs) {
  const Eigen::Index n = x.rows();
  jobs = std::max(1U, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<Eigen::Index>(n, 1))));
  if (jobs == 1) return model(x);
  Eigen::VectorXd out(n);
  const Eigen::Index chunk = (n + jobs - 1) / jobs;
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    const Eigen::Index begin = t * chunk;
    const Eigen::Index len = std::min(chunk, n - begin);
    if (len <= 0) break;
    pool.emplace_back([&, t, begin, len] {
      try {
        out.segment(begin, len) = model(x.middleRows(begin, len));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

Eigen::MatrixXd gather(const Eigen::MatrixXd& x, const std::vector<Eigen::Index>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Eigen::Index>(r)) = x.row(rows[r]);
  return out;
}

// Evenly spaced subset of `n` indices, at most `k` of them.
std::vector<Eigen::Index> spread(Eigen::Index n, Eigen::Index k) {
  std::vector<Eigen::Index> idx;
  if (n <= 0 || k <= 0) return idx;
  k = std::min(k, n);
  for (Eigen::Index i = 0; i < k; ++i) idx.push_back(i * n / k);
  return idx;
}

}  // namespace

LatentSweep sweep_latent(const BatchModel& probability, const LatentModel& latent,
                         Eigen::Index n_samples, double threshold, std::uint64_t seed,
                         unsigned jobs) {
  LatentSweep sweep;
  sweep.coords = sample_latent(latent, n_samples, seed, &sweep.grid_resolution);
  sweep.decoded = latent.inverse_transform(sweep.coords).cwiseMax(0.0).cwiseMin(1.0);
  sweep.probability = predict_parallel(probability, sweep.decoded, jobs);
  sweep.ratio = solvability_ratio(sweep.probability, threshold);
  return sweep;
}

SolvabilityReport estimate_solvability(const Eigen::MatrixXd& features,
                                       const std::vector<std::optional<bool>>& labels,
                                       const SolvabilityConfig& config) {
  if (static_cast<Eigen::Index>(labels.size()) != features.rows()) {
    throw Error(ErrorCode::LengthMismatch, "labels and feature rows differ in count");
  }
  if (config.holdout_fraction < 0.0 || config.holdout_fraction >= 1.0) {
    throw Error(ErrorCode::TooFewSamples, "holdout fraction must lie in [0, 1)");
  }

  SolvabilityReport report;
  report.n_samples = config.n_samples;
  report.threshold = config.threshold;
  report.seed = config.seed;
  report.latent_kind = config.latent;
  report.latent_dim = config.latent_dim;
  report.point_labels = labels;

  // Stratified holdout: each class shuffled, its leading share held out.
  std::vector<Eigen::Index> train, holdout, unlabeled;
  {
    std::mt19937_64 rng(config.seed ^ 0x5eedf00dULL);
    for (bool cls : {true, false}) {
      std::vector<Eigen::Index> rows;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] && *labels[i] == cls) rows.push_back(static_cast<Eigen::Index>(i));
      }
      std::shuffle(rows.begin(), rows.end(), rng);
      const auto n_out = static_cast<std::size_t>(
          std::floor(config.holdout_fraction * static_cast<double>(rows.size()) + 0.5));
      holdout.insert(holdout.end(), rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(n_out));
      train.insert(train.end(), rows.begin() + static_cast<std::ptrdiff_t>(n_out), rows.end());
    }
    std::sort(train.begin(), train.end());
    std::sort(holdout.begin(), holdout.end());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i]) unlabeled.push_back(static_cast<Eigen::Index>(i));
    }
  }
  report.n_train = static_cast<Eigen::Index>(train.size());
  report.n_holdout = static_cast<Eigen::Index>(holdout.size());
  report.n_unlabeled = static_cast<Eigen::Index>(unlabeled.size());
  if (report.n_train < kMinLabeledRows) {
    throw Error(ErrorCode::InsufficientLabels, std::to_string(report.n_train) +
                                                   " labeled training rows, need " +
                                                   std::to_string(kMinLabeledRows));
  }

  const Eigen::MatrixXd raw_train = gather(features, train);
  std::vector<bool> y_train;
  for (auto i : train) y_train.push_back(*labels[static_cast<std::size_t>(i)]);

  report.scaler = MinMaxScaler::fit(raw_train);
  const Eigen::MatrixXd x_train = report.scaler.transform(raw_train);

  BatchModel probability;
  const auto n_pos = std::count(y_train.begin(), y_train.end(), true);
  const bool single = n_pos == 0 || n_pos == static_cast<long>(y_train.size());
  if (single && config.allow_single_class) {
    const bool cls = n_pos > 0;
    report.constant_label = cls;
    report.notes.push_back(std::string("single class in training labels; constant ") +
                           (cls ? "solved" : "unsolved") + " classifier");
    report.metrics = classification_metrics(std::vector<bool>(y_train.size(), cls), y_train);
    const double p = cls ? 1.0 : 0.0;
    probability = [p](const Eigen::MatrixXd& x) { return Eigen::VectorXd::Constant(x.rows(), p).eval(); };
  } else {
    CvOptions cv = config.cv;
    cv.seed = config.seed;
    report.model = svm_fit_cv(x_train, y_train, cv);
    report.metrics = report.model->cv_pooled;
    if (report.model->degenerate) report.notes.push_back("all training rows identical");
    probability = [m = &*report.model](const Eigen::MatrixXd& x) { return predict_proba(*m, x); };
  }

  if (!holdout.empty()) {
    const Eigen::MatrixXd x_hold = report.scaler.transform(gather(features, holdout));
    const Eigen::VectorXd p = probability(x_hold);
    std::vector<bool> pred, truth;
    for (std::size_t r = 0; r < holdout.size(); ++r) {
      pred.push_back(p(static_cast<Eigen::Index>(r)) >= config.threshold);
      truth.push_back(*labels[static_cast<std::size_t>(holdout[r])]);
    }
    report.holdout_metrics = classification_metrics(pred, truth);
  }

  if (config.latent == LatentKind::PCA) {
    report.latent = pca_fit(x_train, config.latent_dim);
  } else {
    NnmfOptions nnmf = config.nnmf;
    nnmf.seed = config.seed;
    report.latent = nnmf_fit(x_train, config.latent_dim, nnmf);
    if (!report.latent.converged) {
      report.notes.push_back("NNMF stopped at the iteration cap before reaching the tolerance");
    }
  }

  const LatentSweep sweep = sweep_latent(probability, report.latent, config.n_samples,
                                         config.threshold, config.seed, config.jobs);
  report.solvability_ratio = sweep.ratio;
  report.n_samples = sweep.coords.rows();
  report.grid_resolution = sweep.grid_resolution;
  report.sample_coords = sweep.coords;
  report.sample_probability = sweep.probability;

  const Eigen::MatrixXd all_scaled = report.scaler.transform(features).cwiseMax(0.0).cwiseMin(1.0);
  report.point_coords = report.latent.transform(all_scaled);
  report.point_probability = probability(all_scaled);
  if (config.latent == LatentKind::NNMF) {
    for (std::size_t r = 0; r < train.size(); ++r) {
      report.point_coords.row(train[r]) = report.latent.w.row(static_cast<Eigen::Index>(r));
    }
  }

  const Eigen::Index d = features.cols();
  report.attributions = Eigen::VectorXd::Zero(d);
  if (d > kMaxShapleyFeatures) {
    report.attributions_skipped = true;
    report.notes.push_back("Shapley attribution skipped: " + std::to_string(d) +
                           " features exceed the exact-enumeration limit");
  } else if (config.shapley_points > 0) {
    const auto explain = spread(x_train.rows(), config.shapley_points);
    const Eigen::MatrixXd background = gather(x_train, spread(x_train.rows(), config.shapley_background));
    for (auto row : explain) {
      const ShapleyExplanation ex = shapley_values(probability, x_train.row(row), background);
      report.attributions += ex.values.cwiseAbs();
      report.shapley_efficiency_error =
          std::max(report.shapley_efficiency_error,
                   std::abs(ex.values.sum() - (ex.prediction - ex.base_value)));
    }
    report.shapley_points = static_cast<Eigen::Index>(explain.size());
    report.attributions /= static_cast<double>(explain.size());
  }
  return report;
}

}  // namespace gsee
