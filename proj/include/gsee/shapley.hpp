#pragma once

#include <Eigen/Dense>
#include <functional>

#include "gsee/svm.hpp"

namespace gsee {

inline constexpr Eigen::Index kMaxShapleyFeatures = 15;

/// Maps a batch of rows to one scalar output per row.
using BatchModel = std::function<Eigen::VectorXd(const Eigen::MatrixXd&)>;

struct ShapleyExplanation {
  Eigen::VectorXd values;  // one per feature; sums to prediction - base_value
  double prediction = 0.0;
  double base_value = 0.0;  // mean model output over the background rows
};

/// Exact Shapley values by enumerating all 2^D coalitions. Features outside a
/// coalition are filled from each background row and the outputs averaged.
ShapleyExplanation shapley_values(const BatchModel& model, const Eigen::RowVectorXd& point,
                                  const Eigen::MatrixXd& background);

/// Attribution of the calibrated probability output.
ShapleyExplanation shapley_values(const SvmModel& model, const Eigen::RowVectorXd& point,
                                  const Eigen::MatrixXd& background);

}  // namespace gsee
