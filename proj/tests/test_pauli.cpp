#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gsee/error.hpp"
#include "gsee/fci_oracle.hpp"
#include "gsee/pauli.hpp"
#include "test_support.hpp"

using namespace gsee;

namespace {

std::string random_word(int n, std::mt19937_64& rng) {
  static const char ops[] = "IXYZ";
  std::string w;
  for (int q = 0; q < n; ++q) w += ops[rng() % 4];
  return w;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(PauliString, ParseFormatAndWeight) {
  const PauliString p = PauliString::parse("ZZIXIII");
  EXPECT_EQ(p.n_qubits, 7);
  EXPECT_EQ(p.str(), "ZZIXIII");
  EXPECT_EQ(p.weight(), 3);
  EXPECT_EQ(p.support(), 0b1011u);
  EXPECT_EQ(p.op(3), 'X');
  EXPECT_TRUE(PauliString::identity(4).is_identity());
  EXPECT_THROW(PauliString::parse("XQ"), Error);
}

TEST(PauliMultiply, XTimesZIsMinusIY) {
  const PauliProduct r = pauli_multiply(PauliString::parse("X"), PauliString::parse("Z"));
  EXPECT_EQ(r.result.str(), "Y");
  EXPECT_EQ(r.factor(), Complex(0, -1));
}

TEST(PauliMultiply, Involution) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 200; ++t) {
    const PauliString p = PauliString::parse(random_word(1 + t % 10, rng));
    const PauliProduct r = pauli_multiply(p, p);
    EXPECT_TRUE(r.result.is_identity());
    EXPECT_EQ(r.phase, 0);
  }
}

TEST(PauliMultiply, MatchesKroneckerMatrices) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 300; ++t) {
    const std::string a = random_word(4, rng), b = random_word(4, rng);
    const PauliProduct r = pauli_multiply(PauliString::parse(a), PauliString::parse(b));
    const Eigen::MatrixXcd expect = reference::pauli_word_matrix(a) * reference::pauli_word_matrix(b);
    const Eigen::MatrixXcd got = r.factor() * reference::pauli_word_matrix(r.result.str());
    ASSERT_LE(max_abs(expect - got), 1e-15) << a << " * " << b;
  }
}

TEST(PauliMultiply, WidthMismatch) {
  try {
    pauli_multiply(PauliString::parse("X"), PauliString::parse("XX"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SizeMismatch);
  }
}

TEST(PauliMatrix, ConventionExamples) {
  PauliSum z(1);
  z.add(PauliString::parse("Z"), 1.0);
  Eigen::MatrixXcd expect_z(2, 2);
  expect_z << 1, 0, 0, -1;
  EXPECT_EQ(to_matrix(z), expect_z);

  PauliSum x(2);
  x.add(PauliString::parse("XI"), 1.0);
  Eigen::MatrixXcd expect_x = Eigen::MatrixXcd::Zero(4, 4);
  expect_x(0, 1) = expect_x(1, 0) = expect_x(2, 3) = expect_x(3, 2) = 1.0;
  EXPECT_EQ(to_matrix(x), expect_x);
}

TEST(PauliMatrix, MatchesKroneckerSumAndIsHermitian) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    PauliSum h(5);
    Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(32, 32);
    for (int k = 0; k < 12; ++k) {
      const std::string w = random_word(5, rng);
      const double c = g(rng);
      h.add(PauliString::parse(w), c);
      expect += c * reference::pauli_word_matrix(w);
    }
    h.simplify();
    const Eigen::MatrixXcd m = to_matrix(h);
    EXPECT_LE(max_abs(m - expect), 1e-12);
    EXPECT_LE(max_abs(m - m.adjoint()), 1e-15);
  }
}

TEST(PauliMatrix, QubitCap) {
  try {
    to_matrix(PauliSum(15));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::TooLarge);
  }
}

TEST(PauliSum, SimplifyPrunesIdempotentAndOrderFree) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<std::pair<std::string, double>> terms;
  for (int k = 0; k < 50; ++k) terms.emplace_back(random_word(6, rng), g(rng));
  terms.emplace_back("XXXXXX", 1.0);
  terms.emplace_back("XXXXXX", -1.0);
  PauliSum a(6), b(6);
  for (const auto& [w, c] : terms) a.add(PauliString::parse(w), c);
  std::shuffle(terms.begin(), terms.end(), rng);
  for (const auto& [w, c] : terms) b.add(PauliString::parse(w), c);
  a.simplify();
  b.simplify();
  ASSERT_EQ(a.size(), b.size());
  for (const auto& [p, c] : a.terms()) EXPECT_NEAR(std::abs(b.coefficient(p) - c), 0.0, 1e-14);
  EXPECT_EQ(a.coefficient(PauliString::parse("XXXXXX")), Complex(0.0));
  const auto before = a.terms();
  a.simplify();
  EXPECT_EQ(a.terms(), before);
}

TEST(PauliSum, TextRoundTrip) {
  PauliSum h(3);
  h.add(PauliString::parse("XYZ"), 0.125);
  h.add(PauliString::parse("III"), -1.5);
  h.add(PauliString::parse("ZIZ"), Complex(0.25, -0.5));
  const PauliSum back = parse_pauli_sum(format_pauli_sum(h));
  EXPECT_EQ(back.terms(), h.terms());
}

TEST(JordanWigner, LadderAnticommutation) {
  const int n = 6;
  std::vector<Eigen::MatrixXcd> a, ad;
  for (int p = 0; p < n; ++p) {
    a.push_back(to_matrix(jw_annihilation(n, p)));
    ad.push_back(to_matrix(jw_creation(n, p)));
  }
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(1 << n, 1 << n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const Eigen::MatrixXcd ac = a[static_cast<std::size_t>(p)] * ad[static_cast<std::size_t>(q)] +
                                  ad[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(p)];
      EXPECT_LE(max_abs(ac - (p == q ? id : Eigen::MatrixXcd::Zero(1 << n, 1 << n))), 1e-15);
      const Eigen::MatrixXcd aa = a[static_cast<std::size_t>(p)] * a[static_cast<std::size_t>(q)] +
                                  a[static_cast<std::size_t>(q)] * a[static_cast<std::size_t>(p)];
      EXPECT_LE(max_abs(aa), 1e-15);
    }
  }
}

TEST(JordanWigner, NumberOperator) {
  FciDump d(1, 1, 1);
  const double eps = -0.75;
  d.set_h1(0, 0, eps);
  const PauliSum h = jordan_wigner_hamiltonian(d);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_NEAR(h.coefficient(PauliString::parse("II")).real(), eps, 1e-15);
  EXPECT_NEAR(h.coefficient(PauliString::parse("ZI")).real(), -0.5 * eps, 1e-15);
  EXPECT_NEAR(h.coefficient(PauliString::parse("IZ")).real(), -0.5 * eps, 1e-15);
}

TEST(JordanWigner, CoreEnergyOnly) {
  FciDump d(2, 2);
  d.set_e_core(3.25);
  const PauliSum h = jordan_wigner_hamiltonian(d);
  ASSERT_EQ(h.size(), 1u);
  EXPECT_EQ(h.coefficient(PauliString::identity(4)), Complex(3.25));
}

TEST(JordanWigner, EqualsFockSpaceHamiltonian) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const int norb = 1 + static_cast<int>(seed % 3);
    const FciDump d = reference::random_dump(norb, norb, seed);
    const PauliSum h = jordan_wigner_hamiltonian(d);
    EXPECT_TRUE(h.is_real());
    const Eigen::MatrixXcd m = to_matrix(h);
    const Eigen::MatrixXd expect = reference::fock_hamiltonian(d);
    EXPECT_LE(max_abs(m - expect.cast<Complex>()), 1e-12) << "seed " << seed;
  }
}

TEST(JordanWigner, SectorSpectrumMatchesOracle) {
  const FciDump d = reference::random_dump(2, 2, 21);
  const auto states = particle_sector_states(4, 1, 1);
  ASSERT_EQ(states.size(), 4u);
  const Eigen::MatrixXcd block = to_matrix_block(jordan_wigner_hamiltonian(d), states);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(block).eigenvalues();
  const auto basis = build_basis(2, 1, 1);
  const Eigen::MatrixXd fci = Eigen::MatrixXd(build_fci_matrix(d, basis));
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(fci).eigenvalues();
  EXPECT_LE((ev - ref).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(JordanWigner, TermCountIndependentOfAccumulationOrder) {
  const FciDump d = reference::random_dump(3, 2, 31);
  const PauliSum h = jordan_wigner_hamiltonian(d);
  // Rebuild from the one- and two-body pieces in reverse order.
  PauliSum rebuilt(h.n_qubits());
  std::vector<std::pair<PauliString, Complex>> terms(h.terms().begin(), h.terms().end());
  std::reverse(terms.begin(), terms.end());
  for (const auto& [p, c] : terms) rebuilt.add(p, c);
  rebuilt.simplify();
  EXPECT_EQ(rebuilt.size(), h.size());
  EXPECT_LE(h.size(), static_cast<std::size_t>(std::pow(2 * d.norb(), 4)) + 1);
}
