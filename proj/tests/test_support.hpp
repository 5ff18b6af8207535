#pragma once

// Reference implementations used only by the tests. None of them shares code
// with the library routines they check.

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "gsee/fcidump.hpp"

namespace gsee::reference {

/// FciDump with uniformly random integrals (not necessarily physical).
inline FciDump random_dump(int norb, int nelec, std::uint64_t seed, int ms2 = -1) {
  if (ms2 < 0) ms2 = nelec % 2;
  FciDump d(norb, nelec, ms2);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < norb; ++i) {
    for (int j = 0; j <= i; ++j) d.set_h1(i, j, u(rng));
  }
  for (int i = 0; i < norb; ++i)
    for (int j = 0; j < norb; ++j)
      for (int k = 0; k < norb; ++k)
        for (int l = 0; l < norb; ++l) d.set_h2(i, j, k, l, 0.5 * u(rng));
  d.set_e_core(u(rng));
  return d;
}

/// Applies a fermionic ladder operator to an occupation-number state;
/// returns false when the result vanishes.
inline bool ladder(std::uint64_t& state, double& sign, int mode, bool create) {
  const std::uint64_t bit = std::uint64_t{1} << mode;
  if (create == static_cast<bool>(state & bit)) return false;
  if (std::popcount(state & (bit - 1)) % 2) sign = -sign;
  state ^= bit;
  return true;
}

/// Second-quantized Hamiltonian on the full Fock space of 2*norb modes
/// (mode 2p+s), assembled by acting with ladder operators state by state.
inline Eigen::MatrixXd fock_hamiltonian(const FciDump& d) {
  const int n = d.norb();
  const int modes = 2 * n;
  const std::size_t dim = std::size_t{1} << modes;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t col = 0; col < dim; ++col) {
    h(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) += d.e_core();
    for (int s = 0; s < 2; ++s) {
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          std::uint64_t st = col;
          double sg = 1.0;
          if (!ladder(st, sg, 2 * q + s, false) || !ladder(st, sg, 2 * p + s, true)) continue;
          h(static_cast<Eigen::Index>(st), static_cast<Eigen::Index>(col)) += sg * d.h1_at(p, q);
        }
      }
    }
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int p = 0; p < n; ++p)
          for (int q = 0; q < n; ++q)
            for (int r = 0; r < n; ++r)
              for (int u = 0; u < n; ++u) {
                const double v = d.h2_at(p, q, r, u);
                if (v == 0.0) continue;
                std::uint64_t st = col;
                double sg = 1.0;
                // a+_{ps} a+_{rt} a_{ut} a_{qs}, rightmost acts first
                if (!ladder(st, sg, 2 * q + s, false) || !ladder(st, sg, 2 * u + t, false) ||
                    !ladder(st, sg, 2 * r + t, true) || !ladder(st, sg, 2 * p + s, true)) {
                  continue;
                }
                h(static_cast<Eigen::Index>(st), static_cast<Eigen::Index>(col)) += 0.5 * sg * v;
              }
  }
  return h;
}

/// Lowest eigenvalue of the Fock-space Hamiltonian within a fixed (n_alpha, n_beta) sector.
inline double fock_sector_ground(const FciDump& d, int n_alpha, int n_beta) {
  const Eigen::MatrixXd h = fock_hamiltonian(d);
  std::vector<Eigen::Index> idx;
  for (Eigen::Index s = 0; s < h.rows(); ++s) {
    int na = 0, nb = 0;
    for (int m = 0; m < 2 * d.norb(); ++m) {
      if (s >> m & 1) (m % 2 ? nb : na)++;
    }
    if (na == n_alpha && nb == n_beta) idx.push_back(s);
  }
  Eigen::MatrixXd block(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b)
      block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = h(idx[a], idx[b]);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(block).eigenvalues()(0);
}

/// Two-pass Pearson coefficient with explicit loops.
inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Kronecker-product matrix of a Pauli word, qubit 0 least significant.
inline Eigen::MatrixXcd pauli_word_matrix(const std::string& word) {
  using C = std::complex<double>;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : word) {  // word[0] is qubit 0, which must end up least significant
    Eigen::Matrix2cd p;
    switch (c) {
      case 'X': p << 0, 1, 1, 0; break;
      case 'Y': p << 0, C(0, -1), C(0, 1), 0; break;
      case 'Z': p << 1, 0, 0, -1; break;
      default: p = Eigen::Matrix2cd::Identity();
    }
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index a = 0; a < 2; ++a)
      for (Eigen::Index b = 0; b < 2; ++b) next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = p(a, b) * out;
    out = next;
  }
  return out;
}

}  // namespace gsee::reference
