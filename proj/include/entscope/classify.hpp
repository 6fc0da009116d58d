#pragma once

#include <utility>
#include <vector>

#include "entscope/coherence.hpp"
#include "entscope/partition.hpp"
#include "entscope/state.hpp"

namespace entscope {

inline constexpr double kDefaultProductTol = 1e-8;

/// Separability level, entanglement depth, and the finest factorization.
struct ClassificationResult {
  int mSep = 0;  // block count of the finest factorization
  int kEnt = 0;  // largest block size (1 when fully separable)
  Partition finest;
  std::vector<bool> blockEntangled;  // true for blocks of size >= 2
};

/// True iff psi factors as a tensor product across every block of p, i.e.
/// each block's cut has schmidt_max >= 1 - tol.
bool is_product_across(const PureState& psi, const Partition& p, double tol);

/// The unique partition with the maximum number of blocks across which psi
/// is product. Computed by recursive splitting: scan each block's
/// bipartitions in enumeration order, split at the first product cut,
/// recurse on both extracted factors.
Partition finest_factorization(const PureState& psi,
                               double tol = kDefaultProductTol);

ClassificationResult classify(const PureState& psi,
                              double tol = kDefaultProductTol);

/// Pure factor carried by `block` (dominant eigenvector of its reduced
/// state). Meaningful when psi is product across block vs rest.
PureState extract_block_factor(const PureState& psi,
                               std::span<const int> block);

/// Product basis over p whose first element equals psi up to global phase,
/// so psi is incoherent with respect to it. Throws NotProductError when psi
/// is not product across p.
ProductBasis incoherent_basis_witness(const PureState& psi, const Partition& p,
                                      double tol = kDefaultProductTol);

/// Scans the partitions behind the two separability-level conditions:
/// first = psi is product across no partition into m+1 blocks,
/// second = psi is product across at least one partition into m blocks.
/// Both hold together exactly when classify(psi).mSep == m.
std::pair<bool, bool> theorem1_check(const PureState& psi, int m,
                                     double tol = kDefaultProductTol);

/// Depth conditions from the finest factorization:
/// first = some irreducible block has size k,
/// second = no block has size k+1 or more.
/// Both hold together exactly when classify(psi).kEnt == k.
std::pair<bool, bool> theorem3_check(const PureState& psi, int k,
                                     double tol = kDefaultProductTol);

}  // namespace entscope
