#include "gsee/fci_oracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "gsee/error.hpp"

namespace gsee {

std::vector<std::uint32_t> occupation_strings(int norb, int count) {
  std::vector<std::uint32_t> out;
  if (count < 0 || count > norb) return out;
  if (count == 0) return {0u};
  // Gosper's hack enumerates same-popcount words in increasing order.
  std::uint64_t s = (1ULL << count) - 1;
  const std::uint64_t limit = 1ULL << norb;
  while (s < limit) {
    out.push_back(static_cast<std::uint32_t>(s));
    const std::uint64_t c = s & (~s + 1);
    const std::uint64_t r = s + c;
    s = (((r ^ s) >> 2) / c) | r;
  }
  return out;
}

DeterminantBasis build_basis(int norb, int n_alpha, int n_beta, std::size_t max_dimension) {
  if (norb < 1 || norb > kOracleMaxOrbitals) {
    throw Error(ErrorCode::TooLarge, "oracle supports 1.." + std::to_string(kOracleMaxOrbitals) +
                                         " orbitals, got " + std::to_string(norb));
  }
  if (n_alpha < 0 || n_beta < 0 || n_alpha > norb || n_beta > norb) {
    throw Error(ErrorCode::InvalidOccupation, "occupations do not fit the orbital count");
  }
  const auto alpha = occupation_strings(norb, n_alpha);
  const auto beta = occupation_strings(norb, n_beta);
  const double dim = static_cast<double>(alpha.size()) * static_cast<double>(beta.size());
  if (dim > static_cast<double>(max_dimension)) {
    throw Error(ErrorCode::TooLarge, "determinant space of " + std::to_string(dim) +
                                         " exceeds cap " + std::to_string(max_dimension));
  }
  DeterminantBasis basis{norb, n_alpha, n_beta, {}};
  basis.dets.reserve(alpha.size() * beta.size());
  for (auto a : alpha)
    for (auto b : beta) basis.dets.emplace_back(a, b);
  return basis;
}

namespace {

// Spin-orbital 2p+s holds orbital p with spin s (0 alpha, 1 beta).
std::uint64_t interleave(std::uint32_t alpha, std::uint32_t beta, int norb) {
  std::uint64_t m = 0;
  for (int p = 0; p < norb; ++p) {
    m |= static_cast<std::uint64_t>((alpha >> p) & 1u) << (2 * p);
    m |= static_cast<std::uint64_t>((beta >> p) & 1u) << (2 * p + 1);
  }
  return m;
}

// Applies a_q (create=false) or a+_q; returns false when the result vanishes.
bool apply_ladder(std::uint64_t& m, int q, bool create, int& sign) {
  const std::uint64_t bit = 1ULL << q;
  if (static_cast<bool>(m & bit) == create) return false;
  if (std::popcount(m & (bit - 1)) & 1) sign = -sign;
  m ^= bit;
  return true;
}

class SlaterCondon {
 public:
  explicit SlaterCondon(const FciDump& dump) : dump_(dump) {}

  double h1(int p, int q) const {
    return (p & 1) == (q & 1) ? dump_.h1()(p >> 1, q >> 1) : 0.0;
  }

  // Physicist <pq|rs> over spin orbitals = (pr|qs) with spin deltas.
  double phys(int p, int q, int r, int s) const {
    if ((p & 1) != (r & 1) || (q & 1) != (s & 1)) return 0.0;
    return dump_.h2_at(p >> 1, r >> 1, q >> 1, s >> 1);
  }

  double antisym(int p, int q, int r, int s) const { return phys(p, q, r, s) - phys(p, q, s, r); }

  double diagonal(const std::vector<int>& occ) const {
    double e = dump_.e_core();
    for (int p : occ) e += h1(p, p);
    for (std::size_t a = 0; a < occ.size(); ++a)
      for (std::size_t b = 0; b < a; ++b) e += antisym(occ[a], occ[b], occ[a], occ[b]);
    return e;
  }

  double single(const std::vector<int>& occ, int p, int q) const {
    double e = h1(p, q);
    for (int r : occ) e += antisym(p, r, q, r);
    return e;
  }

 private:
  const FciDump& dump_;
};

}  // namespace

Eigen::SparseMatrix<double> build_fci_matrix(const FciDump& dump, const DeterminantBasis& basis) {
  const int norb = basis.norb;
  if (norb != dump.norb() || basis.n_alpha + basis.n_beta != dump.nelec()) {
    throw Error(ErrorCode::InconsistentBasis,
                "basis (" + std::to_string(norb) + " orbitals, " +
                    std::to_string(basis.n_alpha + basis.n_beta) +
                    " electrons) does not match the FCIDUMP");
  }
  std::unordered_map<std::uint64_t, std::size_t> position;
  position.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    position.emplace(interleave(basis.dets[i].first, basis.dets[i].second, norb), i);
  }
  auto index_of = [&](std::uint64_t m) -> std::size_t {
    const auto it = position.find(m);
    if (it == position.end()) {
      throw Error(ErrorCode::InconsistentBasis, "basis is not closed under excitations");
    }
    return it->second;
  };

  const SlaterCondon sc(dump);
  const int nso = 2 * norb;
  std::vector<Eigen::Triplet<double>> triplets;
  std::vector<int> occ, virt;

  for (std::size_t row = 0; row < basis.size(); ++row) {
    const auto [a, b] = basis.dets[row];
    const std::uint64_t m = interleave(a, b, norb);
    occ.clear();
    virt.clear();
    for (int p = 0; p < nso; ++p) ((m >> p) & 1ULL ? occ : virt).push_back(p);

    const auto r = static_cast<Eigen::Index>(row);
    triplets.emplace_back(r, r, sc.diagonal(occ));

    auto push = [&](std::uint64_t target, double value) {
      if (value == 0.0) return;
      const std::size_t col = index_of(target);
      if (col <= row) return;
      const auto c = static_cast<Eigen::Index>(col);
      triplets.emplace_back(r, c, value);
      triplets.emplace_back(c, r, value);
    };

    for (int q : occ) {
      for (int p : virt) {
        if ((p & 1) != (q & 1)) continue;
        std::uint64_t t = m;
        int sign = 1;
        apply_ladder(t, q, false, sign);
        apply_ladder(t, p, true, sign);
        push(t, sign * sc.single(occ, p, q));
      }
    }

    for (std::size_t i1 = 0; i1 < occ.size(); ++i1) {
      for (std::size_t i2 = i1 + 1; i2 < occ.size(); ++i2) {
        const int q1 = occ[i1], q2 = occ[i2];
        const int spin_sum = (q1 & 1) + (q2 & 1);
        for (std::size_t v1 = 0; v1 < virt.size(); ++v1) {
          for (std::size_t v2 = v1 + 1; v2 < virt.size(); ++v2) {
            const int p1 = virt[v1], p2 = virt[v2];
            if ((p1 & 1) + (p2 & 1) != spin_sum) continue;
            const double value = sc.antisym(p1, p2, q1, q2);
            if (value == 0.0) continue;
            std::uint64_t t = m;
            int sign = 1;
            apply_ladder(t, q1, false, sign);
            apply_ladder(t, q2, false, sign);
            apply_ladder(t, p2, true, sign);
            apply_ladder(t, p1, true, sign);
            push(t, sign * value);
          }
        }
      }
    }
  }

  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

namespace {

SpectrumResult dense_lowest(const Eigen::SparseMatrix<double>& matrix, int k) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigenFailure, "dense diagonalization failed");
  }
  SpectrumResult out;
  const int m = std::min<int>(k, static_cast<int>(dense.rows()));
  out.energies.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + m);
  out.vectors = solver.eigenvectors().leftCols(m);
  out.converged = true;
  out.n_iterations = 1;
  return out;
}

// Orthogonalizes `t` against the columns of `basis` (two passes) and returns
// the remaining norm.
double orthogonalize(Eigen::VectorXd& t, const Eigen::MatrixXd& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    if (basis.cols() > 0) t -= basis * (basis.transpose() * t);
  }
  return t.norm();
}

}  // namespace

SpectrumResult davidson(const Eigen::SparseMatrix<double>& matrix, const EigenOptions& options) {
  const Eigen::Index n = matrix.rows();
  const int k = static_cast<int>(std::min<Eigen::Index>(options.k, n));
  const int max_subspace =
      static_cast<int>(std::min<Eigen::Index>(std::max(options.max_subspace, 3 * k), n));
  const Eigen::VectorXd diag = matrix.diagonal();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return diag(a) < diag(b); });
  const int n_guess = static_cast<int>(std::min<Eigen::Index>(2 * k, n));
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n_guess);
  for (int c = 0; c < n_guess; ++c) v(order[static_cast<std::size_t>(c)], c) = 1.0;
  Eigen::MatrixXd av = matrix * v;

  SpectrumResult out;
  Eigen::VectorXd theta;
  Eigen::MatrixXd x, ax;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    out.n_iterations = iter;
    Eigen::MatrixXd t = v.transpose() * av;
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(t);
    theta = small.eigenvalues().head(k);
    x = v * small.eigenvectors().leftCols(k);
    ax = av * small.eigenvectors().leftCols(k);
    const Eigen::MatrixXd residual = ax - x * theta.asDiagonal();

    std::vector<Eigen::VectorXd> corrections;
    for (int i = 0; i < k; ++i) {
      if (residual.col(i).norm() < options.tol) continue;
      Eigen::VectorXd c = residual.col(i);
      for (Eigen::Index r = 0; r < n; ++r) {
        double d = theta(i) - diag(r);
        if (std::abs(d) < 1e-8) d = d < 0 ? -1e-8 : 1e-8;
        c(r) /= d;
      }
      corrections.push_back(std::move(c));
    }
    if (corrections.empty()) {
      out.converged = true;
      break;
    }

    if (v.cols() + static_cast<Eigen::Index>(corrections.size()) > max_subspace) {
      const int keep = static_cast<int>(std::min<Eigen::Index>(2 * k, small.eigenvectors().cols()));
      v = v * small.eigenvectors().leftCols(keep);
      av = av * small.eigenvectors().leftCols(keep);
    }

    Eigen::Index added = 0;
    for (auto& c : corrections) {
      const double before = c.norm();
      const double after = orthogonalize(c, v);
      if (after <= 1e-10 * before || v.cols() >= n) continue;
      c /= after;
      v.conservativeResize(Eigen::NoChange, v.cols() + 1);
      v.col(v.cols() - 1) = c;
      av.conservativeResize(Eigen::NoChange, av.cols() + 1);
      av.col(av.cols() - 1) = matrix * c;
      ++added;
    }
    if (added == 0) {
      // Subspace exhausted: Ritz values are exact if it spans the space.
      out.converged = v.cols() >= n;
      break;
    }
  }

  out.energies.assign(theta.data(), theta.data() + theta.size());
  out.vectors = x;
  return out;
}

SpectrumResult lowest_eigenvalues(const Eigen::SparseMatrix<double>& matrix,
                                  const EigenOptions& options) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0) {
    throw Error(ErrorCode::SizeMismatch, "eigenvalue problem needs a non-empty square matrix");
  }
  if (options.k < 1) {
    throw Error(ErrorCode::SizeMismatch, "k must be >= 1");
  }
  SpectrumResult out = matrix.rows() <= options.dense_cutoff ? dense_lowest(matrix, options.k)
                                                            : davidson(matrix, options);
  if (out.energies.size() >= 2) out.gap = std::max(0.0, out.energies[1] - out.energies[0]);
  return out;
}

OracleResult solve_fci(const FciDump& dump, const EigenOptions& options) {
  const DeterminantBasis basis = build_basis(dump.norb(), dump.n_alpha(), dump.n_beta());
  OracleResult out;
  out.dimension = basis.size();
  out.spectrum = lowest_eigenvalues(build_fci_matrix(dump, basis), options);
  return out;
}

}  // namespace gsee
