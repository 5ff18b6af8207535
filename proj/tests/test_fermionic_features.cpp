#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "gsee/error.hpp"
#include "gsee/fci_oracle.hpp"
#include "gsee/fermionic_features.hpp"
#include "test_support.hpp"

using namespace gsee;

namespace {

// Exact binomial by Pascal's rule.
double binomial(int n, int k) {
  std::vector<std::vector<double>> c(static_cast<std::size_t>(n + 1));
  for (int a = 0; a <= n; ++a) {
    c[static_cast<std::size_t>(a)].assign(static_cast<std::size_t>(a + 1), 1.0);
    for (int b = 1; b < a; ++b) {
      c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          c[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b - 1)] +
          c[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(b)];
    }
  }
  return c[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

Eigen::MatrixXd random_symmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = g(rng);
  return m;
}

FciDump from_factors(int norb, const std::vector<Eigen::MatrixXd>& gs, const std::vector<double>& ls) {
  FciDump d(norb, 0);
  for (int i = 0; i < norb; ++i)
    for (int j = 0; j < norb; ++j)
      for (int k = 0; k < norb; ++k)
        for (int l = 0; l < norb; ++l) {
          double v = 0;
          for (std::size_t r = 0; r < gs.size(); ++r) v += ls[r] * gs[r](i, j) * gs[r](k, l);
          d.set_h2(i, j, k, l, v);
        }
  return d;
}

// Max-abs difference between the reconstruction and the dump's tensor, read
// entry by entry through h2_at.
double reconstruction_error(const FciDump& d, const DfResult& df) {
  const int n = d.norb();
  const Eigen::MatrixXd v = df_reconstruct(df);
  double err = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) err = std::max(err, std::abs(v(i * n + j, k * n + l) - d.h2_at(i, j, k, l)));
  return err;
}

}  // namespace

TEST(LogFciSize, SmallCases) {
  EXPECT_NEAR(log_fci_size(2, 1, 1), std::log10(4.0), 1e-12);
  EXPECT_EQ(log_fci_size(1, 1, 1), 0.0);
  EXPECT_NEAR(log_fci_size(10, 5, 5), std::log10(252.0 * 252.0), 1e-12);
  EXPECT_EQ(build_basis(10, 5, 5).size(), 252u * 252u);
  EXPECT_NEAR(std::pow(10.0, log_fci_size(6, 3, 3)), static_cast<double>(build_basis(6, 3, 3).size()), 1e-9);
}

TEST(LogFciSize, MatchesExactBinomials) {
  for (int n = 0; n <= 20; ++n)
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; b += 3) {
        const double exact = std::log10(binomial(n, a) * binomial(n, b));
        EXPECT_NEAR(log_fci_size(n, a, b), exact, 1e-12) << n << ' ' << a << ' ' << b;
      }
}

TEST(LogFciSize, InvalidOccupation) {
  try {
    log_fci_size(2, 3, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOccupation);
  }
  EXPECT_NO_THROW(log_fci_size(1000, 500, 500));
  EXPECT_TRUE(std::isfinite(log_fci_size(1000, 500, 500)));
}

TEST(SizeFeatures, Populations) {
  const SizeFeatures s = size_features(FciDump(4, 5, 1));
  EXPECT_EQ(s.n_elec, 5);
  EXPECT_EQ(s.n_spin_orbitals, 8);
  EXPECT_EQ(s.n_alpha, 3);
  EXPECT_EQ(s.n_beta, 2);
  EXPECT_NEAR(s.log_fci_size, std::log10(4.0 * 6.0), 1e-12);
}

TEST(DoubleFactorize, RankOneTensor) {
  std::mt19937_64 rng(3);
  for (int norb = 1; norb <= 4; ++norb) {
    Eigen::MatrixXd g = random_symmetric(norb, rng);
    g /= g.norm();
    const double scale = 0.7;
    const FciDump d = from_factors(norb, {g}, {scale * scale});
    const DfResult df = double_factorize(d, {0.0});
    ASSERT_EQ(df.rank, 1) << norb;
    EXPECT_NEAR(df.lambdas[0], scale * scale, 1e-12);
    EXPECT_EQ(df.gap, 0.0);
    EXPECT_NEAR(std::abs((df.g_matrices[0].array() * g.array()).sum()), 1.0, 1e-12);
    EXPECT_LE(reconstruction_error(d, df), 1e-13);
  }
}

TEST(DoubleFactorize, ZeroTensor) {
  const DfResult df = double_factorize(FciDump(3, 2), {0.0});
  EXPECT_EQ(df.rank, 0);
  EXPECT_TRUE(df.lambdas.empty());
  EXPECT_EQ(df.gap, 0.0);
  EXPECT_TRUE((df_reconstruct(df).array() == 0.0).all());
}

TEST(DoubleFactorize, PsdTensorWithinTruncationBound) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Eigen::MatrixXd> gs;
  std::vector<double> ls;
  for (int r = 0; r < 6; ++r) {
    gs.push_back(random_symmetric(3, rng));
    ls.push_back(r < 4 ? u(rng) : 1e-9 * u(rng));
  }
  const FciDump d = from_factors(3, gs, ls);
  const double threshold = 1e-6;
  const DfResult df = double_factorize(d, {threshold});
  ASSERT_GT(df.rank, 0);
  EXPECT_LE(reconstruction_error(d, df), threshold * std::abs(df.lambdas[0]) * df.rank);
  EXPECT_EQ(df.rank, 4);
}

TEST(DoubleFactorize, ExactWithZeroThreshold) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const FciDump d = reference::random_dump(1 + static_cast<int>(seed % 6), 0, seed);
    const DfResult df = double_factorize(d, {0.0});
    EXPECT_LE(reconstruction_error(d, df), 1e-8) << seed;
  }
}

TEST(DoubleFactorize, OrderingNormsAndSymmetry) {
  const FciDump d = reference::random_dump(4, 0, 11);
  const DfResult df = double_factorize(d, {0.0});
  ASSERT_EQ(static_cast<std::size_t>(df.rank), df.lambdas.size());
  for (std::size_t l = 0; l < df.lambdas.size(); ++l) {
    if (l) EXPECT_GE(std::abs(df.lambdas[l - 1]), std::abs(df.lambdas[l]));
    EXPECT_NEAR(df.g_matrices[l].norm(), 1.0, 1e-10);
    EXPECT_EQ(df.g_matrices[l], df.g_matrices[l].transpose());
  }
  EXPECT_DOUBLE_EQ(df.gap, std::abs(df.lambdas[0] - df.lambdas[1]));
}

TEST(DoubleFactorize, SignFlipsLeaveReconstructionAndGap) {
  const FciDump d = reference::random_dump(3, 0, 12);
  DfResult df = double_factorize(d, {0.0});
  const Eigen::MatrixXd before = df_reconstruct(df);
  for (auto& g : df.g_matrices) g = -g;
  EXPECT_LE((df_reconstruct(df) - before).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(DoubleFactorize, RankMonotoneInThreshold) {
  const FciDump d = reference::random_dump(4, 0, 13);
  int previous = 1 << 30;
  for (double t : {0.0, 1e-8, 1e-4, 1e-2, 0.1, 0.5, 0.99, 1.5}) {
    const int rank = double_factorize(d, {t}).rank;
    EXPECT_LE(rank, previous) << t;
    previous = rank;
  }
  EXPECT_EQ(previous, 0);
}

TEST(DoubleFactorize, AbsoluteThresholdMode) {
  // Orthonormal symmetric factors, so the planted weights are the eigenvalues.
  Eigen::MatrixXd e00 = Eigen::MatrixXd::Zero(3, 3), e11 = e00, e01 = e00;
  e00(0, 0) = 1.0;
  e11(1, 1) = 1.0;
  e01(0, 1) = e01(1, 0) = std::sqrt(0.5);
  const FciDump d = from_factors(3, {e00, e11, e01}, {2.0, 5e-4, -2e-3});
  const DfResult abs_df = double_factorize(d, {1e-3, DfThresholdMode::Absolute});
  EXPECT_EQ(abs_df.mode, DfThresholdMode::Absolute);
  ASSERT_EQ(abs_df.rank, 2);
  EXPECT_NEAR(abs_df.lambdas[0], 2.0, 1e-12);
  EXPECT_NEAR(abs_df.lambdas[1], -2e-3, 1e-12);
  EXPECT_EQ(double_factorize(d, {2e-3}).rank, 1);  // relative: cutoff 4e-3
}

TEST(DoubleFactorize, SupermatrixIsSymmetric) {
  const Eigen::MatrixXd v = two_electron_supermatrix(reference::random_dump(3, 0, 14));
  EXPECT_EQ(v, v.transpose());
  EXPECT_EQ(v.rows(), 9);
}
