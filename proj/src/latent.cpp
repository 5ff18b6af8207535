#include "gsee/latent.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "gsee/error.hpp"

namespace gsee {

namespace {

void check_dim(const Eigen::MatrixXd& x, int dim) {
  if (!x.allFinite()) throw Error(ErrorCode::NonFiniteInput, "latent fit on non-finite data");
  if (dim < 1 || dim > x.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "latent dimension " + std::to_string(dim) +
                                                  " not in [1, " + std::to_string(x.cols()) + "]");
  }
}

std::size_t distinct_rows(const Eigen::MatrixXd& x) {
  std::set<std::vector<double>> rows;
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(x.cols()));
    for (Eigen::Index c = 0; c < x.cols(); ++c) row[static_cast<std::size_t>(c)] = x(r, c);
    rows.insert(std::move(row));
  }
  return rows.size();
}

void record_bounds(LatentModel& m, const Eigen::MatrixXd& embedding) {
  m.lower = embedding.colwise().minCoeff();
  m.upper = embedding.colwise().maxCoeff();
}

constexpr double kEps = 1e-16;

// One multiplicative update of `w` with `h` fixed (Lee-Seung, Frobenius loss).
void update_w(const Eigen::MatrixXd& x, Eigen::MatrixXd& w, const Eigen::MatrixXd& h) {
  const Eigen::MatrixXd numer = x * h.transpose();
  const Eigen::MatrixXd denom = w * (h * h.transpose());
  w.array() *= numer.array() / (denom.array() + kEps);
}

void update_h(const Eigen::MatrixXd& x, const Eigen::MatrixXd& w, Eigen::MatrixXd& h) {
  const Eigen::MatrixXd numer = w.transpose() * x;
  const Eigen::MatrixXd denom = (w.transpose() * w) * h;
  h.array() *= numer.array() / (denom.array() + kEps);
}

}  // namespace

LatentModel pca_fit(const Eigen::MatrixXd& x, int dim) {
  check_dim(x, dim);
  if (distinct_rows(x) < static_cast<std::size_t>(dim)) {
    throw Error(ErrorCode::RankDeficient, "fewer distinct rows than the latent dimension");
  }
  LatentModel m;
  m.kind = LatentKind::PCA;
  m.dim = dim;
  m.mean = x.colwise().mean();
  const Eigen::MatrixXd centered = x.rowwise() - m.mean;
  const double denom = std::max<Eigen::Index>(x.rows() - 1, 1);
  const Eigen::MatrixXd cov = centered.transpose() * centered / denom;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "covariance did not diagonalize");
  }
  const Eigen::Index d = x.cols();
  m.components.resize(d, dim);
  m.explained_variance_ratio.resize(dim);
  const double total = std::max(solver.eigenvalues().sum(), 0.0);
  for (int c = 0; c < dim; ++c) {
    const Eigen::Index src = d - 1 - c;  // eigenvalues ascend
    Eigen::VectorXd axis = solver.eigenvectors().col(src);
    Eigen::Index arg;
    axis.cwiseAbs().maxCoeff(&arg);
    if (axis(arg) < 0) axis = -axis;
    m.components.col(c) = axis;
    m.explained_variance_ratio(c) =
        total > 0 ? std::max(solver.eigenvalues()(src), 0.0) / total : 0.0;
  }
  record_bounds(m, m.transform(x));
  return m;
}

LatentModel nnmf_fit(const Eigen::MatrixXd& x, int dim, const NnmfOptions& options) {
  check_dim(x, dim);
  if ((x.array() < 0).any()) {
    throw Error(ErrorCode::NonFiniteInput, "NNMF requires a non-negative matrix");
  }
  LatentModel m;
  m.kind = LatentKind::NNMF;
  m.dim = dim;

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double scale = std::sqrt(std::max(x.mean(), 1e-12) / dim);
  m.w = Eigen::MatrixXd::NullaryExpr(x.rows(), dim, [&]() { return scale * unif(rng); });
  m.h = Eigen::MatrixXd::NullaryExpr(dim, x.cols(), [&]() { return scale * unif(rng); });

  double previous = (x - m.w * m.h).norm();
  m.converged = false;
  for (int it = 1; it <= options.max_iter; ++it) {
    update_h(x, m.w, m.h);
    update_w(x, m.w, m.h);
    m.n_iterations = it;
    const double err = (x - m.w * m.h).norm();
    if (err == 0.0 || (previous - err) <= options.tol * std::max(previous, 1e-300)) {
      previous = err;
      m.converged = true;
      break;
    }
    previous = err;
  }
  m.reconstruction_error = previous;
  record_bounds(m, m.w);
  return m;
}

Eigen::MatrixXd LatentModel::transform(const Eigen::MatrixXd& x) const {
  if (kind == LatentKind::PCA) {
    if (x.cols() != components.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "PCA transform dimension mismatch");
    }
    return (x.rowwise() - mean) * components;
  }
  if (x.cols() != h.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "NNMF transform dimension mismatch");
  }
  // Non-negative least squares for W with H fixed.
  Eigen::MatrixXd wn = Eigen::MatrixXd::Constant(x.rows(), dim, std::sqrt(std::max(x.mean(), 1e-12) / dim));
  for (int it = 0; it < 2000; ++it) update_w(x, wn, h);
  return wn;
}

Eigen::MatrixXd LatentModel::inverse_transform(const Eigen::MatrixXd& z) const {
  if (z.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "latent inverse dimension mismatch");
  }
  if (kind == LatentKind::PCA) {
    return (z * components.transpose()).rowwise() + mean;
  }
  return z * h;
}

}  // namespace gsee
