#include "gsee/scaling.hpp"

#include "gsee/error.hpp"

namespace gsee {

namespace {

void require_finite(const Eigen::MatrixXd& x) {
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteInput, "matrix has non-finite entries");
}

}  // namespace

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& x) {
  require_finite(x);
  if (x.rows() == 0) throw Error(ErrorCode::InsufficientRows, "cannot scale an empty matrix");
  return MinMaxScaler{x.colwise().minCoeff(), x.colwise().maxCoeff()};
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& x) const {
  require_finite(x);
  if (x.cols() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "scaler fitted on " + std::to_string(dim()) +
                                                  " columns, got " + std::to_string(x.cols()));
  }
  Eigen::MatrixXd out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double span = maxs(c) - mins(c);
    if (span > 0.0) {
      out.col(c) = (x.col(c).array() - mins(c)) / span;
    } else {
      out.col(c).setZero();
    }
  }
  return out;
}

Eigen::MatrixXd MinMaxScaler::inverse(const Eigen::MatrixXd& scaled) const {
  if (scaled.cols() != dim()) {
    throw Error(ErrorCode::DimensionMismatch, "inverse scaling dimension mismatch");
  }
  Eigen::MatrixXd out(scaled.rows(), scaled.cols());
  for (Eigen::Index c = 0; c < scaled.cols(); ++c) {
    out.col(c) = scaled.col(c).array() * (maxs(c) - mins(c)) + mins(c);
  }
  return out;
}

ScaledDataset minmax_scale(const Eigen::MatrixXd& raw, const std::optional<MinMaxScaler>& params) {
  ScaledDataset ds;
  ds.scaler = params ? *params : MinMaxScaler::fit(raw);
  ds.x = ds.scaler.transform(raw);
  return ds;
}

}  // namespace gsee
