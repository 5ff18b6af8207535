#include "gsee/pauli.hpp"

#include <array>
#include <bit>
#include <functional>
#include <sstream>

#include "gsee/error.hpp"

namespace gsee {

namespace {

constexpr std::array<Complex, 4> kIPowers = {Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                             Complex(0, -1)};

void check_qubits(int n_qubits) {
  if (n_qubits < 0 || n_qubits > PauliString::kMaxQubits) {
    throw Error(ErrorCode::TooLarge, std::to_string(n_qubits) + " qubits exceeds the " +
                                         std::to_string(PauliString::kMaxQubits) +
                                         "-qubit string width");
  }
}

std::uint64_t low_bits(int n) { return n >= 64 ? ~0ULL : ((1ULL << n) - 1); }

}  // namespace

PauliString PauliString::identity(int n_qubits) {
  check_qubits(n_qubits);
  return PauliString{n_qubits, 0, 0};
}

PauliString PauliString::single(int n_qubits, int qubit, char op) {
  check_qubits(n_qubits);
  if (qubit < 0 || qubit >= n_qubits) {
    throw Error(ErrorCode::SizeMismatch, "qubit " + std::to_string(qubit) + " out of range");
  }
  PauliString p{n_qubits, 0, 0};
  const std::uint64_t bit = 1ULL << qubit;
  switch (op) {
    case 'I': break;
    case 'X': p.x_mask = bit; break;
    case 'Z': p.z_mask = bit; break;
    case 'Y': p.x_mask = bit; p.z_mask = bit; break;
    default: throw Error(ErrorCode::MalformedLine, std::string("unknown Pauli '") + op + "'");
  }
  return p;
}

PauliString PauliString::parse(std::string_view text) {
  const int n = static_cast<int>(text.size());
  check_qubits(n);
  PauliString p{n, 0, 0};
  for (int q = 0; q < n; ++q) {
    const auto s = single(n, q, text[static_cast<std::size_t>(q)]);
    p.x_mask |= s.x_mask;
    p.z_mask |= s.z_mask;
  }
  return p;
}

int PauliString::weight() const { return std::popcount(support()); }

char PauliString::op(int qubit) const {
  const bool x = (x_mask >> qubit) & 1ULL;
  const bool z = (z_mask >> qubit) & 1ULL;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  for (int q = 0; q < n_qubits; ++q) s[static_cast<std::size_t>(q)] = op(q);
  return s;
}

Complex PauliProduct::factor() const { return kIPowers[static_cast<std::size_t>(phase & 3)]; }

// With P(x,z) = i^{|x&z|} X^x Z^z and Z^z X^x = (-1)^{|z&x|} X^x Z^z:
// P1 P2 = i^{c1 + c2 + 2|z1&x2| - c3} P3.
PauliProduct pauli_multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits != b.n_qubits) {
    throw Error(ErrorCode::SizeMismatch, "multiplying Pauli strings of different widths");
  }
  PauliProduct out;
  out.result = PauliString{a.n_qubits, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask};
  const int c1 = std::popcount(a.x_mask & a.z_mask);
  const int c2 = std::popcount(b.x_mask & b.z_mask);
  const int c3 = std::popcount(out.result.x_mask & out.result.z_mask);
  const int flips = std::popcount(a.z_mask & b.x_mask);
  out.phase = ((c1 + c2 + 2 * flips - c3) % 4 + 4) % 4;
  return out;
}

void PauliSum::add(const PauliString& p, Complex coeff) {
  if (p.n_qubits != n_qubits_) {
    throw Error(ErrorCode::SizeMismatch, "term width differs from PauliSum width");
  }
  terms_[p] += coeff;
}

Complex PauliSum::coefficient(const PauliString& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Complex{} : it->second;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.n_qubits_ != n_qubits_) {
    throw Error(ErrorCode::SizeMismatch, "adding PauliSums of different widths");
  }
  for (const auto& [p, c] : other.terms_) terms_[p] += c;
  return *this;
}

PauliSum& PauliSum::operator*=(Complex scale) {
  for (auto& [p, c] : terms_) c *= scale;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits_ != b.n_qubits_) {
    throw Error(ErrorCode::SizeMismatch, "multiplying PauliSums of different widths");
  }
  PauliSum out(a.n_qubits_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      const auto prod = pauli_multiply(pa, pb);
      out.terms_[prod.result] += ca * cb * prod.factor();
    }
  }
  return out;
}

PauliSum& PauliSum::simplify() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    Complex& c = it->second;
    if (std::abs(c.imag()) < kImagTolerance) c.imag(0.0);
    if (std::abs(c) < kPruneTolerance) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
  return *this;
}

bool PauliSum::is_real() const {
  for (const auto& [p, c] : terms_) {
    if (c.imag() != 0.0) return false;
  }
  return true;
}

namespace {

struct WeightedString {
  PauliString p;
  Complex c;
};

// Two-term expansion of a ladder operator.
std::array<WeightedString, 2> ladder_terms(int n_qubits, int mode, bool creation) {
  const std::uint64_t tail = low_bits(mode);
  const std::uint64_t bit = 1ULL << mode;
  const PauliString x{n_qubits, bit, tail};
  const PauliString y{n_qubits, bit, tail | bit};
  const Complex iy = creation ? Complex(0, -0.5) : Complex(0, 0.5);
  return {WeightedString{x, Complex(0.5, 0)}, WeightedString{y, iy}};
}

PauliSum from_terms(int n_qubits, const std::array<WeightedString, 2>& terms) {
  PauliSum s(n_qubits);
  for (const auto& t : terms) s.add(t.p, t.c);
  return s;
}

void check_mode(int n_qubits, int mode) {
  check_qubits(n_qubits);
  if (mode < 0 || mode >= n_qubits) {
    throw Error(ErrorCode::SizeMismatch, "mode " + std::to_string(mode) + " out of range");
  }
}

}  // namespace

PauliSum jw_annihilation(int n_qubits, int mode) {
  check_mode(n_qubits, mode);
  return from_terms(n_qubits, ladder_terms(n_qubits, mode, false));
}

PauliSum jw_creation(int n_qubits, int mode) {
  check_mode(n_qubits, mode);
  return from_terms(n_qubits, ladder_terms(n_qubits, mode, true));
}

PauliSum jordan_wigner_hamiltonian(const FciDump& dump) {
  const int norb = dump.norb();
  const int nq = 2 * norb;
  check_qubits(nq);

  std::vector<std::array<WeightedString, 2>> create(static_cast<std::size_t>(nq));
  std::vector<std::array<WeightedString, 2>> annihilate(static_cast<std::size_t>(nq));
  for (int m = 0; m < nq; ++m) {
    create[static_cast<std::size_t>(m)] = ladder_terms(nq, m, true);
    annihilate[static_cast<std::size_t>(m)] = ladder_terms(nq, m, false);
  }

  std::map<PauliString, Complex> acc;

  auto add_string = [&](std::initializer_list<const std::array<WeightedString, 2>*> ops,
                        double coeff) {
    // Expand the ordered product of ladder operators term by term.
    std::vector<WeightedString> current{{PauliString::identity(nq), Complex(coeff, 0)}};
    for (const auto* op : ops) {
      std::vector<WeightedString> next;
      next.reserve(current.size() * 2);
      for (const auto& lhs : current) {
        for (const auto& rhs : *op) {
          const auto prod = pauli_multiply(lhs.p, rhs.p);
          next.push_back({prod.result, lhs.c * rhs.c * prod.factor()});
        }
      }
      current = std::move(next);
    }
    for (const auto& t : current) acc[t.p] += t.c;
  };

  for (int p = 0; p < norb; ++p) {
    for (int q = 0; q < norb; ++q) {
      const double h = dump.h1()(p, q);
      if (h == 0.0) continue;
      for (int s = 0; s < 2; ++s) {
        add_string({&create[spin_orbital(p, s)], &annihilate[spin_orbital(q, s)]}, h);
      }
    }
  }

  // 1/2 sum (ij|kl) a+_{i s} a+_{k t} a_{l t} a_{j s}
  for (int i = 0; i < norb; ++i) {
    for (int j = 0; j < norb; ++j) {
      for (int k = 0; k < norb; ++k) {
        for (int l = 0; l < norb; ++l) {
          const double v = dump.h2_at(i, j, k, l);
          if (v == 0.0) continue;
          for (int s = 0; s < 2; ++s) {
            for (int t = 0; t < 2; ++t) {
              const int is = spin_orbital(i, s), js = spin_orbital(j, s);
              const int kt = spin_orbital(k, t), lt = spin_orbital(l, t);
              if (is == kt || js == lt) continue;
              add_string({&create[is], &create[kt], &annihilate[lt], &annihilate[js]},
                         0.5 * v);
            }
          }
        }
      }
    }
  }

  PauliSum h(nq);
  for (const auto& [p, c] : acc) h.add(p, c);
  h.add(PauliString::identity(nq), dump.e_core());
  h.simplify();
  return h;
}

namespace {

void accumulate_column(const PauliSum& h, std::uint64_t state,
                       const std::function<void(std::uint64_t, Complex)>& emit) {
  for (const auto& [p, c] : h.terms()) {
    const int ipow = std::popcount(p.x_mask & p.z_mask);
    const int sign = std::popcount(p.z_mask & state) & 1;
    Complex value = c * kIPowers[static_cast<std::size_t>(ipow & 3)];
    if (sign) value = -value;
    emit(state ^ p.x_mask, value);
  }
}

}  // namespace

Eigen::MatrixXcd to_matrix(const PauliSum& h, int max_qubits) {
  const int n = h.n_qubits();
  if (n > max_qubits || n > 30) {
    throw Error(ErrorCode::TooLarge, std::to_string(n) + " qubits exceeds the dense cap of " +
                                         std::to_string(max_qubits));
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    accumulate_column(h, static_cast<std::uint64_t>(col), [&](std::uint64_t row, Complex v) {
      m(static_cast<Eigen::Index>(row), col) += v;
    });
  }
  return m;
}

std::vector<std::uint64_t> particle_sector_states(int n_qubits, int n_alpha, int n_beta) {
  if (n_qubits > 30) {
    throw Error(ErrorCode::TooLarge, "sector enumeration limited to 30 qubits");
  }
  std::uint64_t alpha_mask = 0;
  for (int q = 0; q < n_qubits; q += 2) alpha_mask |= 1ULL << q;
  const std::uint64_t beta_mask = low_bits(n_qubits) & ~alpha_mask;
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (1ULL << n_qubits); ++s) {
    if (std::popcount(s & alpha_mask) == n_alpha && std::popcount(s & beta_mask) == n_beta) {
      out.push_back(s);
    }
  }
  return out;
}

Eigen::MatrixXcd to_matrix_block(const PauliSum& h, const std::vector<std::uint64_t>& states) {
  std::map<std::uint64_t, Eigen::Index> index;
  for (std::size_t n = 0; n < states.size(); ++n) index[states[n]] = static_cast<Eigen::Index>(n);
  const auto dim = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    accumulate_column(h, states[static_cast<std::size_t>(col)],
                      [&](std::uint64_t row, Complex v) {
                        auto it = index.find(row);
                        if (it != index.end()) m(it->second, col) += v;
                      });
  }
  return m;
}

std::string format_pauli_sum(const PauliSum& h) {
  std::ostringstream out;
  for (const auto& [p, c] : h.terms()) {
    if (c.imag() == 0.0) {
      out << format_real(c.real());
    } else {
      out << '(' << format_real(c.real()) << ',' << format_real(c.imag()) << ')';
    }
    out << ' ' << p.str() << '\n';
  }
  return out.str();
}

PauliSum parse_pauli_sum(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string coeff, label;
  std::vector<std::pair<Complex, PauliString>> items;
  while (in >> coeff >> label) {
    Complex c;
    if (!coeff.empty() && coeff.front() == '(') {
      const auto comma = coeff.find(',');
      if (comma == std::string::npos || coeff.back() != ')') {
        throw Error(ErrorCode::MalformedLine, "bad complex coefficient '" + coeff + "'");
      }
      c = Complex(parse_real(coeff.substr(1, comma - 1)),
                  parse_real(coeff.substr(comma + 1, coeff.size() - comma - 2)));
    } else {
      c = Complex(parse_real(coeff), 0.0);
    }
    items.emplace_back(c, PauliString::parse(label));
  }
  if (items.empty()) return PauliSum{};
  PauliSum h(items.front().second.n_qubits);
  for (const auto& [c, p] : items) h.add(p, c);
  return h;
}

}  // namespace gsee
