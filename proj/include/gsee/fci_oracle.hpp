#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gsee/fcidump.hpp"

namespace gsee {

inline constexpr int kOracleMaxOrbitals = 16;
inline constexpr std::size_t kOracleMaxDimension = 2'000'000;

/// All (alpha, beta) occupation pairs, alpha-major, each string ascending as an
/// integer (lexicographic order).
struct DeterminantBasis {
  int norb = 0;
  int n_alpha = 0;
  int n_beta = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> dets;

  std::size_t size() const { return dets.size(); }
};

DeterminantBasis build_basis(int norb, int n_alpha, int n_beta,
                             std::size_t max_dimension = kOracleMaxDimension);

/// Strings of `norb` bits with exactly `count` set, ascending.
std::vector<std::uint32_t> occupation_strings(int norb, int count);

/// Slater-Condon Hamiltonian over the basis, e_core on the diagonal. Signs
/// follow the interleaved alpha/beta ordering used by the qubit encoding.
Eigen::SparseMatrix<double> build_fci_matrix(const FciDump& dump, const DeterminantBasis& basis);

struct SpectrumResult {
  std::vector<double> energies;  // ascending
  double gap = 0.0;              // energies[1] - energies[0] when available
  int n_iterations = 0;
  bool converged = false;
  Eigen::MatrixXd vectors;
};

struct EigenOptions {
  int k = 1;
  double tol = 1e-8;
  /// Dimensions at or below this are solved densely.
  Eigen::Index dense_cutoff = 2000;
  int max_subspace = 30;
  int max_iterations = 1000;
};

SpectrumResult lowest_eigenvalues(const Eigen::SparseMatrix<double>& matrix,
                                  const EigenOptions& options = {});

/// Davidson iteration with a diagonal preconditioner, independent of dense_cutoff.
SpectrumResult davidson(const Eigen::SparseMatrix<double>& matrix, const EigenOptions& options);

struct OracleResult {
  std::size_t dimension = 0;
  SpectrumResult spectrum;
};

/// Lowest two states of the dump's (n_alpha, n_beta) sector.
OracleResult solve_fci(const FciDump& dump, const EigenOptions& options = {2, 1e-8});

}  // namespace gsee
