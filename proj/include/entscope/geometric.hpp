#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entscope/partition.hpp"
#include "entscope/state.hpp"

namespace entscope {

struct AlsConfig {
  int restarts = 32;
  int maxIterations = 500;
  double convergenceTol = 1e-12;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Tensor product of one unit vector per partition block; the feasible set
/// of the inner overlap maximization.
struct BlockProductState {
  Partition partition;
  std::vector<Eigen::VectorXcd> vectors;

  /// Expands to the full joint state.
  PureState to_state(std::span<const std::int64_t> dims) const;
};

/// One optimization run on a fixed partition.
struct AlsRun {
  double overlapSq = 0.0;
  BlockProductState state;
  int iterations = 0;
  bool converged = false;
  std::vector<double> overlapTrace;  // squared overlap after every block update
};

/// Multi-restart alternating iteration: cycles blocks in ascending order,
/// replacing the free block by the normalized environment vector. Works for
/// any block count; used directly by equivalence tests.
AlsRun als_block_product(const PureState& psi, const Partition& p,
                         const AlsConfig& cfg);

/// Exact path for 2-block partitions via the Schmidt decomposition.
AlsRun svd_block_product(const PureState& psi, const Partition& p);

struct ClosestResult {
  double overlapSq = 0.0;
  BlockProductState state;
  int iterations = 0;
  bool converged = false;
};

/// Best block-product approximation on one partition: trivial for one
/// block, exact (SVD) for two, multi-restart ALS otherwise.
ClosestResult closest_block_product(const PureState& psi, const Partition& p,
                                    const AlsConfig& cfg);

struct PartitionOverlapRow {
  std::string partition;
  double overlapSq = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct GmDiagnostics {
  int restarts = 0;
  int iterations = 0;
  bool converged = false;
  std::vector<PartitionOverlapRow> perPartition;
};

/// Outcome of the geometric-measure optimization. value = 1 - overlapSq;
/// zero whenever the state factors into m or more blocks. The reported
/// value is an upper bound on the true measure for partitions handled by
/// the local ALS path (exact on one- and two-block partitions).
struct GmResult {
  double value = 0.0;
  double overlapSq = 1.0;
  Partition bestPartition;
  BlockProductState closest;
  GmDiagnostics diagnostics;
};

/// Geometric measure over all partitions into m blocks: maximal squared
/// overlap with block-product states, best partition = first in enumeration
/// order attaining the maximum.
GmResult gm_m(const PureState& psi, int m, const AlsConfig& cfg);

/// Generalized geometric measure: gm_m with m = 2, fully on the SVD path.
GmResult ggm(const PureState& psi, const AlsConfig& cfg);

}  // namespace entscope
