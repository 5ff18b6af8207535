#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace gsee {

enum class LatentKind { PCA, NNMF };

/// Invertible low-dimensional embedding of scaled feature rows.
struct LatentModel {
  LatentKind kind = LatentKind::PCA;
  int dim = 2;

  // PCA: columns of `components` (D x dim) are orthonormal principal axes.
  Eigen::MatrixXd components;
  Eigen::RowVectorXd mean;
  Eigen::VectorXd explained_variance_ratio;

  // NNMF: X ~ W H with W (n_samples x dim), H (dim x D), both >= 0.
  Eigen::MatrixXd w;
  Eigen::MatrixXd h;
  int n_iterations = 0;
  bool converged = true;
  double reconstruction_error = 0.0;  // ||X - WH||_F for the fitted rows

  // Per-axis extent of the training embedding.
  Eigen::RowVectorXd lower;
  Eigen::RowVectorXd upper;

  Eigen::MatrixXd transform(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd inverse_transform(const Eigen::MatrixXd& z) const;
};

LatentModel pca_fit(const Eigen::MatrixXd& x, int dim = 2);

struct NnmfOptions {
  int max_iter = 20000;
  double tol = 1e-9;  // relative improvement of the Frobenius error
  std::uint64_t seed = 0;
};

LatentModel nnmf_fit(const Eigen::MatrixXd& x, int dim = 2, const NnmfOptions& options = {});

}  // namespace gsee
