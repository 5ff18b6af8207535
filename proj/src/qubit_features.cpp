#include "gsee/qubit_features.hpp"

#include <bit>

#include "gsee/error.hpp"

namespace gsee {

std::vector<int> Hypergraph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_vertices), 0);
  for (const auto& e : edges) {
    for (std::uint64_t rest = e.vertices; rest; rest &= rest - 1) {
      ++deg[static_cast<std::size_t>(std::countr_zero(rest))];
    }
  }
  return deg;
}

Hypergraph build_hypergraph(const PauliSum& h) {
  Hypergraph g;
  g.n_vertices = h.n_qubits();
  for (const auto& [p, c] : h.terms()) {
    if (p.is_identity()) continue;
    g.edges.push_back({p.support(), p.weight(), std::abs(c)});
  }
  return g;
}

QubitFeatures compute_qubit_features(const PauliSum& h) {
  const Hypergraph g = build_hypergraph(h);
  QubitFeatures f;
  f.n_qubits = h.n_qubits();
  f.n_pauli_strings = static_cast<int>(g.edges.size());
  f.empty_hamiltonian = g.edges.empty();

  Eigen::VectorXd orders(static_cast<Eigen::Index>(g.edges.size()));
  Eigen::VectorXd weights(static_cast<Eigen::Index>(g.edges.size()));
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    orders(static_cast<Eigen::Index>(e)) = g.edges[e].order;
    weights(static_cast<Eigen::Index>(e)) = g.edges[e].weight;
  }
  f.one_norm = weights.sum();
  f.edge_order = summarize(orders);
  f.edge_weight = summarize(weights);
  if (!f.empty_hamiltonian) {
    const auto deg = g.degrees();
    Eigen::VectorXd degrees(static_cast<Eigen::Index>(deg.size()));
    for (std::size_t v = 0; v < deg.size(); ++v) degrees(static_cast<Eigen::Index>(v)) = deg[v];
    f.vertex_degree = summarize(degrees);
  }
  return f;
}

std::size_t FeatureVector::index_of(std::string_view name) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == name) return i;
  }
  throw Error(ErrorCode::SchemaViolation, "unknown feature '" + std::string(name) + "'");
}

FeatureVector assemble_features(const SizeFeatures& size, const DfResult& df,
                                const QubitFeatures& q) {
  FeatureVector fv;
  fv.values << size.n_elec, size.n_spin_orbitals, size.log_fci_size, df.rank, df.gap,
      q.one_norm, q.n_pauli_strings, q.n_qubits, q.edge_order.max, q.edge_order.min,
      q.edge_order.mean, q.edge_order.std, q.vertex_degree.max, q.vertex_degree.min,
      q.vertex_degree.mean, q.vertex_degree.std, q.edge_weight.max, q.edge_weight.min,
      q.edge_weight.mean, q.edge_weight.std;
  return fv;
}

FeatureVector compute_features(const FciDump& dump, const FeatureOptions& options) {
  return assemble_features(size_features(dump), double_factorize(dump, options.df),
                           compute_qubit_features(jordan_wigner_hamiltonian(dump)));
}

}  // namespace gsee
