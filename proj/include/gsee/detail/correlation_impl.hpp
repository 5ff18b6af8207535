#pragma once

#include <algorithm>
#include <cmath>

#include "gsee/error.hpp"

namespace gsee {

template <typename Derived>
CorrelationResult correlation_matrix(const Eigen::MatrixBase<Derived>& table) {
  using Scalar = typename Derived::Scalar;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index rows = table.rows();
  const Eigen::Index cols = table.cols();
  if (rows < 2) {
    throw Error(ErrorCode::InsufficientRows, "correlation needs at least 2 rows");
  }
  Matrix centered = table.rowwise() - table.colwise().mean();
  CorrelationResult out;
  out.constant_column.assign(static_cast<std::size_t>(cols), false);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> norms(cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    norms(c) = centered.col(c).norm();
    const Scalar scale = table.col(c).cwiseAbs().maxCoeff();
    if (norms(c) <= Scalar(1e-14) * std::sqrt(Scalar(rows)) * scale || norms(c) == Scalar(0)) {
      out.constant_column[static_cast<std::size_t>(c)] = true;
    }
  }
  out.matrix = Eigen::MatrixXd::Identity(cols, cols);
  for (Eigen::Index a = 0; a < cols; ++a) {
    for (Eigen::Index b = 0; b < a; ++b) {
      double r = 0.0;
      if (!out.constant_column[static_cast<std::size_t>(a)] &&
          !out.constant_column[static_cast<std::size_t>(b)]) {
        r = static_cast<double>(centered.col(a).dot(centered.col(b)) / (norms(a) * norms(b)));
        r = std::clamp(r, -1.0, 1.0);
      }
      out.matrix(a, b) = r;
      out.matrix(b, a) = r;
    }
  }
  return out;
}

}  // namespace gsee
