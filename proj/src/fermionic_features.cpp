#include "gsee/fermionic_features.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "gsee/error.hpp"

namespace gsee {

namespace {

double log10_binomial(int n, int k) {
  return (std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)) /
         std::log(10.0);
}

}  // namespace

double log_fci_size(int norb, int n_alpha, int n_beta) {
  if (norb < 0 || n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb) {
    throw Error(ErrorCode::InvalidOccupation,
                "occupations (" + std::to_string(n_alpha) + ", " + std::to_string(n_beta) +
                    ") do not fit in " + std::to_string(norb) + " orbitals");
  }
  // lgamma round-off can leave -1e-16 for a single determinant.
  return std::max(0.0, log10_binomial(norb, n_alpha) + log10_binomial(norb, n_beta));
}

SizeFeatures size_features(const FciDump& dump) {
  SizeFeatures f;
  f.n_elec = dump.nelec();
  f.n_spin_orbitals = 2 * dump.norb();
  f.n_alpha = dump.n_alpha();
  f.n_beta = dump.n_beta();
  f.log_fci_size = log_fci_size(dump.norb(), f.n_alpha, f.n_beta);
  return f;
}

Eigen::MatrixXd two_electron_supermatrix(const FciDump& dump) {
  const int n = dump.norb();
  Eigen::MatrixXd v(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) v(i * n + j, k * n + l) = dump.h2_at(i, j, k, l);
  return v;
}

DfResult double_factorize(const FciDump& dump, const DfOptions& options) {
  const int n = dump.norb();
  const int npair = n * (n + 1) / 2;

  // V restricted to symmetric matrices, in the orthonormal basis
  // E_ii and (E_ij + E_ji)/sqrt(2). The antisymmetric complement is exactly
  // null because (ij|kl) = (ji|kl).
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(npair);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) pairs.emplace_back(i, j);
  Eigen::VectorXd weight(npair);
  for (int p = 0; p < npair; ++p) {
    weight(p) = pairs[p].first == pairs[p].second ? 1.0 : std::sqrt(2.0);
  }
  Eigen::MatrixXd vpair(npair, npair);
  for (int p = 0; p < npair; ++p) {
    for (int q = 0; q <= p; ++q) {
      const double value = weight(p) * weight(q) *
                           dump.h2_at(pairs[p].first, pairs[p].second, pairs[q].first,
                                      pairs[q].second);
      vpair(p, q) = value;
      vpair(q, p) = value;
    }
  }

  DfResult df;
  df.norb = n;
  df.mode = options.mode;
  df.truncation_threshold = options.threshold;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(vpair);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "two-electron supermatrix did not diagonalize");
  }
  const Eigen::VectorXd& evals = solver.eigenvalues();
  Eigen::MatrixXd evecs = solver.eigenvectors();

  const double lambda_max = evals.size() ? evals.cwiseAbs().maxCoeff() : 0.0;
  if (lambda_max == 0.0) return df;  // all-zero tensor

  for (int c = 0; c < evecs.cols(); ++c) {
    Eigen::Index arg;
    evecs.col(c).cwiseAbs().maxCoeff(&arg);
    if (evecs(arg, c) < 0) evecs.col(c) *= -1.0;
  }

  const double cutoff =
      std::max(options.mode == DfThresholdMode::Relative ? options.threshold * lambda_max
                                                         : options.threshold,
               kDfNoiseFloor * lambda_max);

  std::vector<int> order(static_cast<std::size_t>(evals.size()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double fa = std::abs(evals(a));
    const double fb = std::abs(evals(b));
    if (fa != fb) return fa > fb;
    return std::lexicographical_compare(evecs.col(a).begin(), evecs.col(a).end(),
                                        evecs.col(b).begin(), evecs.col(b).end());
  });

  for (int idx : order) {
    if (!(std::abs(evals(idx)) > cutoff)) break;
    Eigen::MatrixXd g(n, n);
    for (int p = 0; p < npair; ++p) {
      const auto [i, j] = pairs[p];
      const double value = evecs(p, idx) / weight(p);
      g(i, j) = value;
      g(j, i) = value;
    }
    df.lambdas.push_back(evals(idx));
    df.g_matrices.push_back(std::move(g));
  }
  df.rank = static_cast<int>(df.lambdas.size());
  df.gap = df.rank >= 2 ? std::abs(df.lambdas[0] - df.lambdas[1]) : 0.0;
  return df;
}

Eigen::MatrixXd df_reconstruct(const DfResult& df) {
  const int n = df.norb;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int l = 0; l < df.rank; ++l) {
    // Row-major flattening to match two_electron_supermatrix's (i*n + j).
    Eigen::MatrixXd gt = df.g_matrices[l].transpose();
    Eigen::Map<const Eigen::VectorXd> vec(gt.data(), n * n);
    v.noalias() += df.lambdas[l] * vec * vec.transpose();
  }
  return v;
}

}  // namespace gsee
