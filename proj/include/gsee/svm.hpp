#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace gsee {

/// Precision/recall/F1 on the positive class. A metric whose denominator is
/// zero is reported as 0 and flagged.
struct ClassificationMetrics {
  int tp = 0, fp = 0, fn = 0, tn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double accuracy = 0.0;
  bool precision_undefined = false;
  bool recall_undefined = false;
  bool f1_undefined = false;
};

ClassificationMetrics classification_metrics(const std::vector<bool>& predicted,
                                             const std::vector<bool>& truth);

struct SvmParams {
  double c = 1.0;
  double gamma = 1.0;  // K(x, y) = exp(-gamma |x - y|^2)
  double tol = 1e-3;   // KKT violation stopping tolerance
  long max_iter = 10'000'000;
};

/// Binary C-SVC with an RBF kernel; decision(x) = sum coef_i K(sv_i, x) - rho.
struct RbfSvm {
  double gamma = 1.0;
  double c = 1.0;
  Eigen::MatrixXd support_vectors;
  Eigen::VectorXd coef;  // y_i * alpha_i
  double rho = 0.0;
  long iterations = 0;

  Eigen::VectorXd decision(const Eigen::MatrixXd& x) const;
};

/// SMO with second-order working-set selection.
RbfSvm svm_train(const Eigen::MatrixXd& x, const std::vector<bool>& labels,
                 const SvmParams& params);

/// P(y = 1 | f) = 1 / (1 + exp(a f + b)).
struct PlattScaling {
  double a = -1.0;
  double b = 0.0;

  double operator()(double decision) const;
};

PlattScaling platt_fit(const Eigen::VectorXd& decision, const std::vector<bool>& labels);

/// Fold id per row; each class is shuffled (seeded) and dealt round-robin.
std::vector<int> stratified_folds(const std::vector<bool>& labels, int k, std::uint64_t seed);

struct CvOptions {
  std::vector<double> c_grid = {0.1, 1.0, 10.0, 100.0};
  /// Empty means {0.01, 0.1, 1, 1/D}.
  std::vector<double> gamma_grid;
  int folds = 5;
  std::uint64_t seed = 0;
  double tol = 1e-3;
};

struct GridScore {
  double c = 0.0;
  double gamma = 0.0;
  double mean_f1 = 0.0;
};

struct SvmModel {
  RbfSvm svm;
  PlattScaling platt;
  Eigen::Index dim = 0;
  std::vector<ClassificationMetrics> cv_metrics;  // per fold, selected grid point
  ClassificationMetrics cv_pooled;                // all out-of-fold predictions
  std::vector<GridScore> grid;
  double training_accuracy = 0.0;
  bool degenerate = false;  // every training row identical

  Eigen::VectorXd decision(const Eigen::MatrixXd& x) const;
};

SvmModel svm_fit_cv(const Eigen::MatrixXd& x, const std::vector<bool>& labels,
                    const CvOptions& options = {});

/// Platt-calibrated probability of the positive class.
Eigen::VectorXd predict_proba(const SvmModel& model, const Eigen::MatrixXd& x);

}  // namespace gsee
