#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gsee/fcidump.hpp"

namespace gsee {

/// log10 of the determinant-space dimension C(norb, n_alpha) * C(norb, n_beta).
double log_fci_size(int norb, int n_alpha, int n_beta);

struct SizeFeatures {
  int n_elec = 0;
  int n_spin_orbitals = 0;
  int n_alpha = 0;
  int n_beta = 0;
  double log_fci_size = 0.0;
};

SizeFeatures size_features(const FciDump& dump);

enum class DfThresholdMode { Relative, Absolute };

struct DfOptions {
  double threshold = 1e-6;
  DfThresholdMode mode = DfThresholdMode::Relative;
};

/// Eigenvalues below this fraction of |lambda_max| are treated as round-off
/// and never retained, whatever the configured threshold.
inline constexpr double kDfNoiseFloor = 1e-12;

/// Double factorization (ij|kl) = sum_l lambda_l g^l_ij g^l_kl.
struct DfResult {
  int norb = 0;
  std::vector<double> lambdas;            // descending |lambda|
  std::vector<Eigen::MatrixXd> g_matrices;  // symmetric, unit Frobenius norm
  int rank = 0;
  double gap = 0.0;  // |lambda_0 - lambda_1|, 0 when rank < 2
  double truncation_threshold = 0.0;
  DfThresholdMode mode = DfThresholdMode::Relative;
};

/// The norb^2 x norb^2 supermatrix V[(i,j),(k,l)] = (ij|kl), row index i*norb+j.
Eigen::MatrixXd two_electron_supermatrix(const FciDump& dump);

DfResult double_factorize(const FciDump& dump, const DfOptions& options = {});

/// sum_l lambda_l vec(g^l) vec(g^l)^T as a supermatrix.
Eigen::MatrixXd df_reconstruct(const DfResult& df);

}  // namespace gsee
