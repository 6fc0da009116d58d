#include "entscope/classify.hpp"

#include <algorithm>

#include "entscope/errors.hpp"
#include "entscope/tensor_ops.hpp"

namespace entscope {

namespace {

void check_tol(double tol) {
  if (!(tol > 0.0) || tol >= 1.0) {
    throw ArgumentError("product tolerance must be in (0, 1)");
  }
}

struct Factor {
  PureState state;
  std::vector<int> labels;  // original party ids, ascending
};

// Splits a (near-)product factor across the cut given by positions within
// the factor. The block side is the dominant eigenvector of its reduced
// state; the complement follows from one contraction against it.
std::pair<PureState, PureState> split_factor(const PureState& psi,
                                             const std::vector<int>& block) {
  const int n = psi.party_count();
  const Eigen::MatrixXcd m = matricize(psi, block);
  Eigen::MatrixXcd gram;
  gram.noalias() = m * m.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
  Eigen::VectorXcd left = es.eigenvectors().col(gram.rows() - 1);
  Eigen::VectorXcd right = (m.adjoint() * left).conjugate();
  right.normalize();

  std::vector<std::int64_t> leftDims, rightDims;
  for (int p : block) leftDims.push_back(psi.dims()[p]);
  for (int p = 0; p < n; ++p) {
    if (!std::binary_search(block.begin(), block.end(), p)) {
      rightDims.push_back(psi.dims()[p]);
    }
  }
  return {PureState(std::move(leftDims), std::move(left)),
          PureState(std::move(rightDims), std::move(right))};
}

void factorize_rec(Factor f, double tol, std::vector<Factor>& out) {
  const int k = static_cast<int>(f.labels.size());
  if (k > 1) {
    PartitionEnumerator cuts(k, 2);
    while (auto cut = cuts.next()) {
      const std::vector<int>& positions = cut->block(0);
      if (schmidt_max(f.state, positions) >= 1.0 - tol) {
        auto [leftState, rightState] = split_factor(f.state, positions);
        Factor left{std::move(leftState), {}};
        Factor right{std::move(rightState), {}};
        for (int pos = 0; pos < k; ++pos) {
          if (std::binary_search(positions.begin(), positions.end(), pos)) {
            left.labels.push_back(f.labels[pos]);
          } else {
            right.labels.push_back(f.labels[pos]);
          }
        }
        factorize_rec(std::move(left), tol, out);
        factorize_rec(std::move(right), tol, out);
        return;
      }
    }
  }
  out.push_back(std::move(f));
}

std::vector<Factor> irreducible_factors(const PureState& psi, double tol) {
  std::vector<int> labels(psi.party_count());
  for (int i = 0; i < psi.party_count(); ++i) labels[i] = i;
  std::vector<Factor> out;
  factorize_rec(Factor{psi, std::move(labels)}, tol, out);
  return out;
}

}  // namespace

bool is_product_across(const PureState& psi, const Partition& p, double tol) {
  check_tol(tol);
  if (p.party_count() != psi.party_count()) {
    throw DimensionError("partition does not match the state's party count");
  }
  for (const auto& block : p.blocks()) {
    if (static_cast<int>(block.size()) == psi.party_count()) continue;
    if (schmidt_max(psi, block) < 1.0 - tol) return false;
  }
  return true;
}

Partition finest_factorization(const PureState& psi, double tol) {
  check_tol(tol);
  std::vector<std::vector<int>> blocks;
  for (auto& f : irreducible_factors(psi, tol)) {
    blocks.push_back(std::move(f.labels));
  }
  return Partition(std::move(blocks));
}

ClassificationResult classify(const PureState& psi, double tol) {
  ClassificationResult out;
  out.finest = finest_factorization(psi, tol);
  out.mSep = out.finest.block_count();
  out.kEnt = 1;
  for (const auto& block : out.finest.blocks()) {
    out.kEnt = std::max(out.kEnt, static_cast<int>(block.size()));
    out.blockEntangled.push_back(block.size() >= 2);
  }
  return out;
}

PureState extract_block_factor(const PureState& psi,
                               std::span<const int> block) {
  if (static_cast<int>(block.size()) == psi.party_count()) {
    return psi;
  }
  std::vector<int> sorted(block.begin(), block.end());
  std::sort(sorted.begin(), sorted.end());
  auto [left, right] = split_factor(psi, sorted);
  (void)right;
  return std::move(left);
}

ProductBasis incoherent_basis_witness(const PureState& psi, const Partition& p,
                                      double tol) {
  if (!is_product_across(psi, p, tol)) {
    throw NotProductError("state is not product across " + p.to_string());
  }
  std::vector<Eigen::MatrixXcd> mats;
  mats.reserve(p.block_count());
  for (const auto& block : p.blocks()) {
    Eigen::VectorXcd factor;
    if (static_cast<int>(block.size()) == psi.party_count()) {
      factor = permute_to_block_order(psi, p);
    } else {
      factor = extract_block_factor(psi, block).amps();
    }
    mats.push_back(complete_to_unitary(factor));
  }
  return ProductBasis(p, std::move(mats));
}

std::pair<bool, bool> theorem1_check(const PureState& psi, int m, double tol) {
  check_tol(tol);
  const int n = psi.party_count();
  if (m < 1 || m > n) {
    throw ArgumentError("theorem1_check needs 1 <= m <= n");
  }
  bool coherent_above = true;  // product across no (m+1)-block partition
  if (m + 1 <= n) {
    PartitionEnumerator en(n, m + 1);
    while (auto p = en.next()) {
      if (is_product_across(psi, *p, tol)) {
        coherent_above = false;
        break;
      }
    }
  }
  bool incoherent_at = false;  // product across some m-block partition
  PartitionEnumerator en(n, m);
  while (auto p = en.next()) {
    if (is_product_across(psi, *p, tol)) {
      incoherent_at = true;
      break;
    }
  }
  return {coherent_above, incoherent_at};
}

std::pair<bool, bool> theorem3_check(const PureState& psi, int k, double tol) {
  const int n = psi.party_count();
  if (k < 1 || k > n) {
    throw ArgumentError("theorem3_check needs 1 <= k <= n");
  }
  const Partition finest = finest_factorization(psi, tol);
  bool has_k_block = false;
  bool none_larger = true;
  for (const auto& block : finest.blocks()) {
    const int size = static_cast<int>(block.size());
    if (size == k) has_k_block = true;
    if (size >= k + 1) none_larger = false;
  }
  return {has_k_block, none_larger};
}

}  // namespace entscope
