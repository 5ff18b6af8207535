#include "gsee/shapley.hpp"

#include <cmath>
#include <vector>

#include "gsee/error.hpp"

namespace gsee {

ShapleyExplanation shapley_values(const BatchModel& model, const Eigen::RowVectorXd& point,
                                  const Eigen::MatrixXd& background) {
  const Eigen::Index d = point.size();
  if (d > kMaxShapleyFeatures) {
    throw Error(ErrorCode::TooManyFeatures,
                std::to_string(d) + " features exceed the exact-enumeration limit of " +
                    std::to_string(kMaxShapleyFeatures) + "; a sampling approximation would be needed");
  }
  if (background.cols() != d) {
    throw Error(ErrorCode::DimensionMismatch, "background and point differ in width");
  }
  if (background.rows() == 0) {
    throw Error(ErrorCode::InsufficientRows, "Shapley background is empty");
  }

  const std::size_t n_coalitions = std::size_t{1} << d;
  const Eigen::Index nb = background.rows();
  std::vector<double> value(n_coalitions);
  Eigen::MatrixXd batch(nb, d);
  for (std::size_t s = 0; s < n_coalitions; ++s) {
    batch = background;
    for (Eigen::Index j = 0; j < d; ++j) {
      if (s >> j & 1U) batch.col(j).setConstant(point(j));
    }
    const Eigen::VectorXd out = model(batch);
    if (out.size() != nb) throw Error(ErrorCode::LengthMismatch, "model returned wrong batch size");
    value[s] = out.mean();
  }

  // weight[k] = k! (D-k-1)! / D!
  std::vector<double> weight(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    weight[static_cast<std::size_t>(k)] =
        std::exp(std::lgamma(k + 1.0) + std::lgamma(static_cast<double>(d - k)) - std::lgamma(d + 1.0));
  }

  ShapleyExplanation ex;
  ex.values = Eigen::VectorXd::Zero(d);
  for (std::size_t s = 0; s < n_coalitions; ++s) {
    const int size = __builtin_popcountll(s);
    for (Eigen::Index j = 0; j < d; ++j) {
      const std::size_t bit = std::size_t{1} << j;
      if (s & bit) continue;
      ex.values(j) += weight[static_cast<std::size_t>(size)] * (value[s | bit] - value[s]);
    }
  }
  ex.prediction = value[n_coalitions - 1];
  ex.base_value = value[0];
  return ex;
}

ShapleyExplanation shapley_values(const SvmModel& model, const Eigen::RowVectorXd& point,
                                  const Eigen::MatrixXd& background) {
  return shapley_values([&model](const Eigen::MatrixXd& x) { return predict_proba(model, x); },
                        point, background);
}

}  // namespace gsee
