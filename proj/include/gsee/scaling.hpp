#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace gsee {

/// Per-column affine map onto [0, 1]; constant columns map to 0.
struct MinMaxScaler {
  Eigen::RowVectorXd mins;
  Eigen::RowVectorXd maxs;

  static MinMaxScaler fit(const Eigen::MatrixXd& x);

  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& scaled) const;
  Eigen::Index dim() const { return mins.size(); }
};

struct ScaledDataset {
  Eigen::MatrixXd x;  // entries in [0, 1] for the fitted rows
  MinMaxScaler scaler;
  std::optional<std::vector<bool>> labels;
};

/// Fits a new scaler unless `params` is given.
ScaledDataset minmax_scale(const Eigen::MatrixXd& raw,
                           const std::optional<MinMaxScaler>& params = std::nullopt);

}  // namespace gsee
