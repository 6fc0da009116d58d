#include "entscope/tensor_ops.hpp"

#include <algorithm>
#include <cmath>

#include "entscope/errors.hpp"
#include "entscope/kernels.hpp"

namespace entscope {

namespace {

using RowMajorXcd =
    Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<std::int64_t> strides_for(std::span<const std::int64_t> dims) {
  std::vector<std::int64_t> s(dims.size());
  std::int64_t acc = 1;
  for (int p = static_cast<int>(dims.size()) - 1; p >= 0; --p) {
    s[p] = acc;
    acc *= dims[p];
  }
  return s;
}

std::vector<int> checked_sorted_subset(std::span<const int> parties, int n,
                                       const char* what) {
  if (parties.empty()) {
    throw IndexError(std::string(what) + " must be non-empty");
  }
  std::vector<int> sorted(parties.begin(), parties.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= n) {
      throw IndexError(std::string(what) + " party index out of range");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw IndexError(std::string(what) + " has duplicate parties");
    }
  }
  return sorted;
}

// Gather permutation for an arbitrary party order: perm[i_new] = i_old.
std::vector<std::int64_t> gather_perm(std::span<const std::int64_t> dims,
                                      std::span<const int> order) {
  const auto oldStrides = strides_for(dims);
  std::vector<std::int64_t> newDims(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) newDims[q] = dims[order[q]];
  const auto newStrides = strides_for(newDims);
  std::int64_t total = 1;
  for (auto d : newDims) total *= d;

  std::vector<std::int64_t> perm(total);
  std::vector<std::int64_t> digits(order.size(), 0);
  std::int64_t iold = 0;
  for (std::int64_t i = 0; i < total; ++i) {
    perm[i] = iold;
    // odometer increment over the new-order digits, fastest axis last
    for (int q = static_cast<int>(order.size()) - 1; q >= 0; --q) {
      iold += oldStrides[order[q]];
      if (++digits[q] < newDims[q]) break;
      iold -= newDims[q] * oldStrides[order[q]];
      digits[q] = 0;
    }
  }
  return perm;
}

}  // namespace

Eigen::MatrixXcd matricize(const PureState& psi, std::span<const int> block) {
  const int n = psi.party_count();
  const auto rows_parties = checked_sorted_subset(block, n, "block");
  if (static_cast<int>(rows_parties.size()) >= n) {
    throw IndexError("block must be a proper subset of the parties");
  }
  std::vector<int> cols_parties;
  for (int p = 0; p < n; ++p) {
    if (!std::binary_search(rows_parties.begin(), rows_parties.end(), p)) {
      cols_parties.push_back(p);
    }
  }
  std::vector<int> order = rows_parties;
  order.insert(order.end(), cols_parties.begin(), cols_parties.end());

  std::int64_t rows = 1, cols = 1;
  for (int p : rows_parties) rows *= psi.dims()[p];
  for (int p : cols_parties) cols *= psi.dims()[p];

  const auto perm = gather_perm(psi.dims(), order);
  Eigen::MatrixXcd m(rows, cols);
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) {
      m(r, c) = psi.amp(perm[r * cols + c]);
    }
  }
  return m;
}

SchmidtResult schmidt(const PureState& psi, std::span<const int> block) {
  const Eigen::MatrixXcd m = matricize(psi, block);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtResult out;
  out.coefficients = svd.singularValues();
  out.leftVectors = svd.matrixU();
  // psi = sum_k c_k u_k (x) conj(v_k)
  out.rightVectors = svd.matrixV().conjugate();
  return out;
}

double schmidt_max(const PureState& psi, std::span<const int> block) {
  const Eigen::MatrixXcd m = matricize(psi, block);
  // Largest eigenvalue of the smaller-side Gram matrix = sigma_1^2.
  Eigen::MatrixXcd gram;
  if (m.rows() <= m.cols()) {
    gram.noalias() = m * m.adjoint();
  } else {
    gram.noalias() = m.adjoint() * m;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram,
                                                     Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            std::span<const int> keep) {
  const int n = rho.party_count();
  const auto keep_sorted = checked_sorted_subset(keep, n, "keep");
  std::vector<int> traced;
  for (int p = 0; p < n; ++p) {
    if (!std::binary_search(keep_sorted.begin(), keep_sorted.end(), p)) {
      traced.push_back(p);
    }
  }
  const auto strides = strides_for(rho.dims());

  auto offsets_for = [&](const std::vector<int>& parties) {
    std::int64_t count = 1;
    for (int p : parties) count *= rho.dims()[p];
    std::vector<std::int64_t> offs(count, 0);
    std::vector<std::int64_t> digits(parties.size(), 0);
    std::int64_t cur = 0;
    for (std::int64_t i = 0; i < count; ++i) {
      offs[i] = cur;
      for (int q = static_cast<int>(parties.size()) - 1; q >= 0; --q) {
        cur += strides[parties[q]];
        if (++digits[q] < rho.dims()[parties[q]]) break;
        cur -= rho.dims()[parties[q]] * strides[parties[q]];
        digits[q] = 0;
      }
    }
    return offs;
  };

  const auto keepOffs = offsets_for(keep_sorted);
  const auto traceOffs = offsets_for(traced);
  const std::int64_t dk = static_cast<std::int64_t>(keepOffs.size());

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dk, dk);
  for (std::int64_t r = 0; r < dk; ++r) {
    for (std::int64_t c = 0; c < dk; ++c) {
      cd acc = 0.0;
      for (std::int64_t t : traceOffs) {
        acc += rho.matrix()(keepOffs[r] + t, keepOffs[c] + t);
      }
      out(r, c) = acc;
    }
  }
  std::vector<std::int64_t> newDims;
  for (int p : keep_sorted) newDims.push_back(rho.dims()[p]);
  return DensityMatrix(std::move(newDims), std::move(out),
                       DensityMatrix::Check::hermitian);
}

DensityMatrix partial_trace_pure(const PureState& psi,
                                 std::span<const int> keep) {
  const int n = psi.party_count();
  const auto keep_sorted = checked_sorted_subset(keep, n, "keep");
  std::vector<std::int64_t> newDims;
  for (int p : keep_sorted) newDims.push_back(psi.dims()[p]);
  if (static_cast<int>(keep_sorted.size()) == n) {
    return DensityMatrix::from_pure(psi);
  }
  const Eigen::MatrixXcd m = matricize(psi, keep_sorted);
  Eigen::MatrixXcd rho;
  rho.noalias() = m * m.adjoint();
  return DensityMatrix(std::move(newDims), std::move(rho),
                       DensityMatrix::Check::hermitian);
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

std::vector<int> block_party_order(const Partition& p) {
  std::vector<int> order;
  order.reserve(p.party_count());
  for (const auto& block : p.blocks()) {
    order.insert(order.end(), block.begin(), block.end());
  }
  return order;
}

Eigen::VectorXcd permute_to_block_order(const PureState& psi,
                                        const Partition& p) {
  if (p.party_count() != psi.party_count()) {
    throw DimensionError("partition does not match the state's party count");
  }
  const auto perm = gather_perm(psi.dims(), block_party_order(p));
  Eigen::VectorXcd out(psi.dim());
  for (std::int64_t i = 0; i < psi.dim(); ++i) out[i] = psi.amp(perm[i]);
  return out;
}

Eigen::VectorXcd unpermute_from_block_order(
    const Eigen::VectorXcd& permuted, const Partition& p,
    std::span<const std::int64_t> dims) {
  std::vector<std::int64_t> dimsVec(dims.begin(), dims.end());
  const auto perm = gather_perm(dimsVec, block_party_order(p));
  if (permuted.size() != static_cast<std::int64_t>(perm.size())) {
    throw DimensionError("permuted tensor size mismatch");
  }
  Eigen::VectorXcd out(permuted.size());
  for (std::int64_t i = 0; i < permuted.size(); ++i) out[perm[i]] = permuted[i];
  return out;
}

Eigen::VectorXcd apply_to_block_axis(const Eigen::VectorXcd& tensor,
                                     std::span<const std::int64_t> mergedDims,
                                     int b, const Eigen::MatrixXcd& A) {
  const int m = static_cast<int>(mergedDims.size());
  if (b < 0 || b >= m) throw IndexError("block axis out of range");
  const std::int64_t db = mergedDims[b];
  if (A.rows() != db || A.cols() != db) {
    throw DimensionError("block operator side does not match merged dim");
  }
  std::int64_t pre = 1, post = 1;
  for (int q = 0; q < b; ++q) pre *= mergedDims[q];
  for (int q = b + 1; q < m; ++q) post *= mergedDims[q];

  Eigen::VectorXcd out(tensor.size());
  for (std::int64_t chunk = 0; chunk < pre; ++chunk) {
    Eigen::Map<const RowMajorXcd> in(tensor.data() + chunk * db * post, db,
                                     post);
    Eigen::Map<RowMajorXcd> dst(out.data() + chunk * db * post, db, post);
    dst.noalias() = A * in;
  }
  return out;
}

PureState apply_block_unitaries(const PureState& psi, const Partition& p,
                                std::span<const Eigen::MatrixXcd> mats) {
  if (static_cast<int>(mats.size()) != p.block_count()) {
    throw DimensionError("one matrix per block required");
  }
  const auto md = merged_dims(p, psi.dims());
  Eigen::VectorXcd t = permute_to_block_order(psi, p);
  for (int b = 0; b < p.block_count(); ++b) {
    t = apply_to_block_axis(t, md, b, mats[b]);
  }
  Eigen::VectorXcd back = unpermute_from_block_order(t, p, psi.dims());
  return PureState(psi.dims(), std::move(back));
}

BlockContraction::BlockContraction(const PureState& psi, const Partition& p)
    : mergedDims_(entscope::merged_dims(p, psi.dims())),
      psiPerm_(permute_to_block_order(psi, p)) {}

Eigen::VectorXcd BlockContraction::environment(
    std::span<const Eigen::VectorXcd> vectors, int freeBlock) const {
  const int m = static_cast<int>(mergedDims_.size());
  if (freeBlock < 0 || freeBlock >= m) {
    throw IndexError("free block index out of range");
  }
  for (int b = 0; b < m; ++b) {
    if (b == freeBlock) continue;
    if (vectors[b].size() != mergedDims_[b]) {
      throw DimensionError("fixed vector for block " + std::to_string(b) +
                           " has wrong dimension");
    }
  }

  Eigen::VectorXcd cur = psiPerm_;
  std::int64_t curSize = cur.size();
  // Trailing blocks first: each step is a batch of contiguous dot products.
  for (int b = m - 1; b > freeBlock; --b) {
    const std::int64_t db = mergedDims_[b];
    const std::int64_t rows = curSize / db;
    Eigen::VectorXcd next(rows);
    for (std::int64_t i = 0; i < rows; ++i) {
      next[i] = kernels::cdot(vectors[b].data(), cur.data() + i * db,
                              static_cast<std::size_t>(db));
    }
    cur.swap(next);
    curSize = rows;
  }
  // Leading blocks: accumulate rows with axpy.
  for (int b = 0; b < freeBlock; ++b) {
    const std::int64_t db = mergedDims_[b];
    const std::int64_t rest = curSize / db;
    Eigen::VectorXcd next = Eigen::VectorXcd::Zero(rest);
    for (std::int64_t j = 0; j < db; ++j) {
      kernels::axpy(next.data(), cur.data() + j * rest,
                    static_cast<std::size_t>(rest), std::conj(vectors[b][j]));
    }
    cur.swap(next);
    curSize = rest;
  }
  return cur;
}

cd BlockContraction::overlap(std::span<const Eigen::VectorXcd> vectors) const {
  const Eigen::VectorXcd env = environment(vectors, 0);
  return kernels::cdot(vectors[0].data(), env.data(),
                       static_cast<std::size_t>(env.size()));
}

Eigen::VectorXcd environment_vector(const PureState& psi, const Partition& p,
                                    std::span<const Eigen::VectorXcd> fixed,
                                    int freeBlock) {
  if (static_cast<int>(fixed.size()) != p.block_count()) {
    throw DimensionError("need one (possibly empty) vector slot per block");
  }
  for (int b = 0; b < p.block_count(); ++b) {
    if (b == freeBlock) continue;
    const double nrm = fixed[b].norm();
    if (std::abs(nrm - 1.0) > 1e-6) {
      throw ArgumentError("fixed vector for block " + std::to_string(b) +
                          " is not unit norm");
    }
  }
  return BlockContraction(psi, p).environment(fixed, freeBlock);
}

}  // namespace entscope
