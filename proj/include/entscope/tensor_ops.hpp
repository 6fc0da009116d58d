#pragma once

#include <span>
#include <vector>

#include "entscope/partition.hpp"
#include "entscope/state.hpp"

namespace entscope {

/// Reshape across a cut: rows run over `block` (ascending parties), columns
/// over the complement. block must be a non-empty proper subset of the
/// parties (0-based). Frobenius norm equals the state norm.
Eigen::MatrixXcd matricize(const PureState& psi, std::span<const int> block);

/// Schmidt decomposition across the cut: psi = sum_k c_k left_k (x) right_k.
SchmidtResult schmidt(const PureState& psi, std::span<const int> block);

/// Largest squared Schmidt coefficient across the cut (the maximal squared
/// overlap with product states across it). Equals 1 iff psi is product
/// across the cut, up to round-off.
double schmidt_max(const PureState& psi, std::span<const int> block);

/// Partial trace onto the `keep` parties (0-based, non-empty, in range).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const int> keep);

/// Reduced state of a pure state without forming the full density matrix.
DensityMatrix partial_trace_pure(const PureState& psi,
                                 std::span<const int> keep);

/// tr(rho^2).
double purity(const DensityMatrix& rho);

/// Parties listed block by block (partition order), ascending inside blocks.
std::vector<int> block_party_order(const Partition& p);

/// Gather copy of the amplitude tensor with the parties reordered so each
/// block occupies contiguous axes (block 0 slowest). Inverse: scatter back.
Eigen::VectorXcd permute_to_block_order(const PureState& psi,
                                        const Partition& p);
Eigen::VectorXcd unpermute_from_block_order(const Eigen::VectorXcd& permuted,
                                            const Partition& p,
                                            std::span<const std::int64_t> dims);

/// out[.., k, ..] = sum_j A(k, j) in[.., j, ..] on block axis b of a
/// block-ordered tensor. A must be square of the block's merged dimension.
Eigen::VectorXcd apply_to_block_axis(const Eigen::VectorXcd& tensor,
                                     std::span<const std::int64_t> mergedDims,
                                     int b, const Eigen::MatrixXcd& A);

/// Applies one unitary per block to the state (block-local rotation).
PureState apply_block_unitaries(const PureState& psi, const Partition& p,
                                std::span<const Eigen::MatrixXcd> mats);

/// Contraction workspace for one (state, partition) pair: the permuted
/// tensor is built once and reused across alternating-update sweeps.
class BlockContraction {
public:
  BlockContraction(const PureState& psi, const Partition& p);

  const std::vector<std::int64_t>& merged_dims() const { return mergedDims_; }

  /// Contraction of psi against the fixed unit vectors of every block except
  /// `freeBlock`; its norm is the best overlap attainable by varying only
  /// that block.
  Eigen::VectorXcd environment(std::span<const Eigen::VectorXcd> vectors,
                               int freeBlock) const;

  /// <P|psi> for a full set of block vectors.
  cd overlap(std::span<const Eigen::VectorXcd> vectors) const;

private:
  std::vector<std::int64_t> mergedDims_;
  Eigen::VectorXcd psiPerm_;
};

/// Spec-level wrapper over BlockContraction::environment. `fixed` holds one
/// vector per block; the freeBlock slot is ignored (may be empty).
Eigen::VectorXcd environment_vector(const PureState& psi, const Partition& p,
                                    std::span<const Eigen::VectorXcd> fixed,
                                    int freeBlock);

}  // namespace entscope
