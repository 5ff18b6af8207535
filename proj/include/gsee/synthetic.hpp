#pragma once

#include <cstdint>
#include <filesystem>

#include "gsee/fcidump.hpp"

namespace gsee {

/// Random restricted Hamiltonian. The two-electron tensor is a positive sum
/// of `rank` symmetric outer products (0 means norb), so it carries the full
/// 8-fold symmetry and a positive semidefinite supermatrix.
FciDump random_fcidump(int norb, int nelec, std::uint64_t seed, int rank = 0);

struct SyntheticCatalogOptions {
  int n_instances = 10;
  std::uint64_t seed = 7;
};

/// Writes FCIDUMPs, problem files with oracle reference energies (the last
/// instance holds guidestars), and solution files for three solvers under `root`.
void write_synthetic_catalog(const std::filesystem::path& root,
                             const SyntheticCatalogOptions& options = {});

}  // namespace gsee
