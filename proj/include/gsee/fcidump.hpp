#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace gsee {

/// Restricted (spatial-orbital) electronic Hamiltonian as stored in an FCIDUMP.
///
/// Two-electron integrals are chemist-notation (ij|kl) and held once per
/// 8-fold permutation orbit; `h2_at` resolves any index order to that slot.
class FciDump {
 public:
  FciDump() = default;
  FciDump(int norb, int nelec, int ms2 = 0);

  int norb() const { return norb_; }
  int nelec() const { return nelec_; }
  int ms2() const { return ms2_; }
  int isym() const { return isym_; }
  const std::vector<int>& orbsym() const { return orbsym_; }
  double e_core() const { return e_core_; }
  const Eigen::MatrixXd& h1() const { return h1_; }

  int n_alpha() const { return (nelec_ + ms2_) / 2; }
  int n_beta() const { return (nelec_ - ms2_) / 2; }

  void set_e_core(double value) { e_core_ = value; }
  void set_isym(int isym) { isym_ = isym; }
  void set_orbsym(std::vector<int> orbsym);

  /// Sets h1(i,j) and h1(j,i).
  void set_h1(int i, int j, double value);
  /// Sets the whole 8-fold orbit of (ij|kl).
  void set_h2(int i, int j, int k, int l, double value);

  double h1_at(int i, int j) const;
  double h2_at(int i, int j, int k, int l) const;

  /// Packed storage on canonical indices: i>=j, k>=l, ij>=kl.
  const Eigen::VectorXd& h2_packed() const { return h2_; }
  static std::size_t pair_index(int i, int j);
  std::size_t canonical_index(int i, int j, int k, int l) const;

  friend bool operator==(const FciDump& a, const FciDump& b);

 private:
  void check_index(int i) const;

  int norb_ = 0;
  int nelec_ = 0;
  int ms2_ = 0;
  int isym_ = 1;
  std::vector<int> orbsym_;
  double e_core_ = 0.0;
  Eigen::MatrixXd h1_;
  Eigen::VectorXd h2_;
};

/// Agreement required between symmetry-equivalent duplicate entries.
inline constexpr double kDuplicateTolerance = 1e-10;

FciDump parse_fcidump(std::istream& in);
FciDump parse_fcidump(std::string_view text);
FciDump read_fcidump(const std::string& path);

std::string write_fcidump(const FciDump& dump);
void write_fcidump(const FciDump& dump, const std::string& path);

/// Locale-independent real parser accepting Fortran `D` exponents.
double parse_real(std::string_view token);
/// Shortest text that round-trips exactly.
std::string format_real(double value);

}  // namespace gsee
