#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "gsee/fermionic_features.hpp"
#include "gsee/pauli.hpp"

namespace gsee {

struct Hyperedge {
  std::uint64_t vertices = 0;  // bit q set when the string acts on qubit q
  int order = 0;
  double weight = 0.0;  // |h_e|
};

/// Interaction hypergraph of a Pauli Hamiltonian: one hyperedge per
/// non-identity string.
struct Hypergraph {
  int n_vertices = 0;
  std::vector<Hyperedge> edges;

  std::vector<int> degrees() const;
};

Hypergraph build_hypergraph(const PauliSum& h);

/// max/min/mean/population-std of a sample; all zero when empty.
struct Summary {
  double max = 0.0;
  double min = 0.0;
  double mean = 0.0;
  double std = 0.0;
};

template <typename Derived>
Summary summarize(const Eigen::DenseBase<Derived>& values) {
  Summary s;
  if (values.size() == 0) return s;
  s.max = values.maxCoeff();
  s.min = values.minCoeff();
  s.mean = values.mean();
  s.std = std::sqrt((values.derived().array() - s.mean).square().mean());
  return s;
}

struct QubitFeatures {
  int n_qubits = 0;
  double one_norm = 0.0;
  int n_pauli_strings = 0;
  Summary edge_order;
  Summary vertex_degree;
  Summary edge_weight;
  bool empty_hamiltonian = false;  // only an identity term was present
};

QubitFeatures compute_qubit_features(const PauliSum& h);

/// The full per-Hamiltonian descriptor, in CSV column order.
struct FeatureVector {
  static constexpr std::size_t kSize = 20;
  static constexpr std::array<std::string_view, kSize> kNames = {
      "n_elec",           "n_spin_orbitals",    "log_fci_size",       "df_rank",
      "df_gap",           "one_norm",           "n_pauli_strings",    "n_qubits",
      "edge_order_max",   "edge_order_min",     "edge_order_mean",    "edge_order_std",
      "vertex_degree_max", "vertex_degree_min", "vertex_degree_mean", "vertex_degree_std",
      "edge_weight_max",  "edge_weight_min",    "edge_weight_mean",   "edge_weight_std",
  };

  Eigen::Matrix<double, kSize, 1> values = Eigen::Matrix<double, kSize, 1>::Zero();

  double operator[](std::size_t i) const { return values(static_cast<Eigen::Index>(i)); }
  static std::size_t index_of(std::string_view name);
};

FeatureVector assemble_features(const SizeFeatures& size, const DfResult& df,
                                const QubitFeatures& qubit);

struct FeatureOptions {
  DfOptions df;
};

FeatureVector compute_features(const FciDump& dump, const FeatureOptions& options = {});

/// Pearson correlation between columns; constant columns correlate 0 with
/// everything except themselves.
struct CorrelationResult {
  Eigen::MatrixXd matrix;
  std::vector<bool> constant_column;
};

template <typename Derived>
CorrelationResult correlation_matrix(const Eigen::MatrixBase<Derived>& table);

}  // namespace gsee

#include "gsee/detail/correlation_impl.hpp"
