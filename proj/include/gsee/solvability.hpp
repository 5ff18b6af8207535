#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsee/latent.hpp"
#include "gsee/scaling.hpp"
#include "gsee/shapley.hpp"
#include "gsee/svm.hpp"

namespace gsee {

inline constexpr Eigen::Index kMinLabeledRows = 10;

struct SolvabilityConfig {
  LatentKind latent = LatentKind::PCA;
  int latent_dim = 2;
  Eigen::Index n_samples = 10'000;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  CvOptions cv;
  NnmfOptions nnmf;
  /// Fraction of labeled rows held out (stratified) for test metrics; 0 disables.
  double holdout_fraction = 0.0;
  /// Rows explained by Shapley attribution and background rows used to marginalize.
  Eigen::Index shapley_points = 8;
  Eigen::Index shapley_background = 16;
  /// With one class present, report a constant classifier instead of throwing.
  bool allow_single_class = false;
  unsigned jobs = 1;
};

/// Probability of every decoded latent sample and the resulting ratio.
struct LatentSweep {
  Eigen::MatrixXd coords;     // latent samples, one per row
  Eigen::MatrixXd decoded;    // inverse-transformed and clipped to [0, 1]
  Eigen::VectorXd probability;
  int grid_resolution = 0;    // 0 when sampled at random
  double ratio = 0.0;
};

/// Grid of ceil(sqrt(n))^2 points over the latent bounds for dim 2, otherwise
/// n seeded uniform draws inside the bounds.
Eigen::MatrixXd sample_latent(const LatentModel& latent, Eigen::Index n_samples,
                              std::uint64_t seed, int* grid_resolution = nullptr);

/// Count of probabilities >= threshold over the total.
double solvability_ratio(const Eigen::VectorXd& probability, double threshold);

LatentSweep sweep_latent(const BatchModel& probability, const LatentModel& latent,
                         Eigen::Index n_samples, double threshold, std::uint64_t seed,
                         unsigned jobs = 1);

struct SolvabilityReport {
  double solvability_ratio = 0.0;
  Eigen::Index n_samples = 0;
  double threshold = 0.5;
  std::uint64_t seed = 0;
  LatentKind latent_kind = LatentKind::PCA;
  int latent_dim = 2;
  int grid_resolution = 0;

  ClassificationMetrics metrics;  // out-of-fold predictions on the training rows
  std::optional<ClassificationMetrics> holdout_metrics;
  Eigen::Index n_train = 0;
  Eigen::Index n_holdout = 0;
  Eigen::Index n_unlabeled = 0;
  std::optional<bool> constant_label;  // set when only one class was present

  MinMaxScaler scaler;
  LatentModel latent;
  std::optional<SvmModel> model;

  Eigen::MatrixXd sample_coords;
  Eigen::VectorXd sample_probability;
  Eigen::MatrixXd point_coords;  // embedding of every input row
  Eigen::VectorXd point_probability;
  std::vector<std::optional<bool>> point_labels;

  Eigen::VectorXd attributions;  // mean |Shapley value| per feature
  bool attributions_skipped = false;
  Eigen::Index shapley_points = 0;
  double shapley_efficiency_error = 0.0;
  std::vector<std::string> notes;
};

/// Scale, fit the classifier on full-dimensional features, fit and bound the
/// latent space, sample it, decode, and score the samples. Rows with no label
/// are embedded for plotting only.
SolvabilityReport estimate_solvability(const Eigen::MatrixXd& features,
                                       const std::vector<std::optional<bool>>& labels,
                                       const SolvabilityConfig& config = {});

}  // namespace gsee
