#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entscope/geometric.hpp"
#include "entscope/partition.hpp"
#include "entscope/state.hpp"

namespace entscope {

/// Complete orthonormal basis whose elements are tensor products of one
/// column per block: the incoherent reference set for fidelity coherence.
/// Each blockBases matrix is unitary (columns = the block's basis vectors
/// over its merged dimension).
class ProductBasis {
public:
  ProductBasis(Partition partition, std::vector<Eigen::MatrixXcd> blockBases);

  const Partition& partition() const { return partition_; }
  const std::vector<Eigen::MatrixXcd>& block_bases() const {
    return blockBases_;
  }

  /// Expands the element selected by one column index per block.
  PureState element(std::span<const std::int64_t> elementIndex,
                    std::span<const std::int64_t> dims) const;

private:
  Partition partition_;
  std::vector<Eigen::MatrixXcd> blockBases_;
};

struct CoherenceDiagnostics {
  std::string bestPartition;
  int samples = 0;
  std::uint64_t seed = 0;
};

/// value = sqrt(1 - maxFidelity); zero exactly when the state is an element
/// of the (best) basis.
struct CoherenceResult {
  double value = 0.0;
  double maxFidelity = 1.0;
  std::vector<std::int64_t> bestElementIndex;
  std::optional<ProductBasis> bestBasis;
  CoherenceDiagnostics diagnostics;
};

/// Deterministic unitary completion: column 0 is `first`, the rest come
/// from Gram-Schmidt over computational vectors in index order, skipping
/// near-parallel candidates (residual below 1e-8).
Eigen::MatrixXcd complete_to_unitary(const Eigen::VectorXcd& first);

/// Completes every block vector to an orthonormal block basis; the product
/// state becomes element (0,...,0).
ProductBasis basis_from_block_product(const BlockProductState& bp);

/// Fidelity-based coherence of psi with respect to one product basis. The
/// max over elements is found by rotating psi into the basis (one
/// change-of-basis contraction) and scanning for the largest squared
/// amplitude; ties resolve to the first element in lexicographic
/// multi-index order.
CoherenceResult fidelity_coherence(const PureState& psi,
                                   const ProductBasis& basis);

/// Minimum fidelity coherence over the class of product bases across all
/// partitions into m blocks: sqrt(1 - overlapSq) at the gm_m optimum, with
/// the optimal basis constructed from the closest block-product state.
CoherenceResult min_fidelity_coherence(const PureState& psi, int m,
                                       const AlsConfig& cfg);

struct Theorem5Report {
  std::string label;
  int m = 0;
  double gm = 0.0;
  double coherence = 0.0;
  double gap = 0.0;
  double tolerance = 1e-6;
  bool pass = false;
};

/// Compares gm_m against the squared coherence evaluated end to end through
/// the constructed optimal basis.
Theorem5Report verify_theorem5(const PureState& psi, int m,
                               const AlsConfig& cfg, double tolerance = 1e-6,
                               std::string label = {});

/// Independent cross-validation: seeded random product bases per partition
/// plus alternating refinement of the best element's block vectors.
/// Guarded to joint dimension <= 2^12 (BudgetExceeded).
CoherenceResult direct_basis_search(const PureState& psi, int m,
                                    const AlsConfig& cfg);

}  // namespace entscope
