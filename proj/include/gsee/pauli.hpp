#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gsee/fcidump.hpp"

namespace gsee {

using Complex = std::complex<double>;

/// Pauli string in symplectic form: bit q of x_mask / z_mask selects X / Z on
/// qubit q, both bits select Y. Up to 64 qubits.
struct PauliString {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  static constexpr int kMaxQubits = 64;

  static PauliString identity(int n_qubits);
  /// Single-qubit operator `op` in {'I','X','Y','Z'} on `qubit`.
  static PauliString single(int n_qubits, int qubit, char op);
  /// Text form with qubit 0 leftmost, e.g. "ZZIXIII".
  static PauliString parse(std::string_view text);

  bool is_identity() const { return (x_mask | z_mask) == 0; }
  /// Qubits acted on non-trivially.
  std::uint64_t support() const { return x_mask | z_mask; }
  int weight() const;
  char op(int qubit) const;
  std::string str() const;

  auto operator<=>(const PauliString&) const = default;
};

/// Product a*b = i^phase * result, phase in {0,1,2,3}.
struct PauliProduct {
  PauliString result;
  int phase = 0;
  Complex factor() const;
};

PauliProduct pauli_multiply(const PauliString& a, const PauliString& b);

/// Weighted sum of Pauli strings; terms kept in canonical (sorted) order.
class PauliSum {
 public:
  /// Coefficients smaller than this are dropped by simplify().
  static constexpr double kPruneTolerance = 1e-12;
  /// Imaginary parts smaller than this are zeroed by simplify().
  static constexpr double kImagTolerance = 1e-10;

  PauliSum() = default;
  explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  const std::map<PauliString, Complex>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(const PauliString& p, Complex coeff);
  Complex coefficient(const PauliString& p) const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(Complex scale);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator*(Complex s, PauliSum a) { return a *= s; }

  PauliSum& simplify();

  bool is_real() const;

 private:
  int n_qubits_ = 0;
  std::map<PauliString, Complex> terms_;
};

/// Interleaved spin-orbital ordering: qubit 2p is orbital p spin alpha,
/// qubit 2p+1 is orbital p spin beta.
inline constexpr int spin_orbital(int orbital, int spin) { return 2 * orbital + spin; }

/// a_p -> (X_p + iY_p)/2 Z_{p-1}...Z_0 ; a_p^dagger -> (X_p - iY_p)/2 Z_{p-1}...Z_0.
PauliSum jw_annihilation(int n_qubits, int mode);
PauliSum jw_creation(int n_qubits, int mode);

/// Jordan-Wigner image of the FCIDUMP Hamiltonian, simplified, real coefficients.
PauliSum jordan_wigner_hamiltonian(const FciDump& dump);

inline constexpr int kDefaultMatrixQubitCap = 14;

/// Dense matrix with qubit 0 as the least significant bit of the basis index.
Eigen::MatrixXcd to_matrix(const PauliSum& h, int max_qubits = kDefaultMatrixQubitCap);

/// Basis states with the given alpha (even qubit) and beta (odd qubit) counts,
/// in ascending index order.
std::vector<std::uint64_t> particle_sector_states(int n_qubits, int n_alpha, int n_beta);

/// Block of to_matrix(h) on the given computational basis states.
Eigen::MatrixXcd to_matrix_block(const PauliSum& h, const std::vector<std::uint64_t>& states);

/// `<coeff> <string>` per line.
std::string format_pauli_sum(const PauliSum& h);
PauliSum parse_pauli_sum(std::string_view text);

}  // namespace gsee
