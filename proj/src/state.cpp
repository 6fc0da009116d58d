#include "entscope/state.hpp"

#include <cmath>

#include "entscope/errors.hpp"
#include "entscope/kernels.hpp"

namespace entscope {

std::int64_t joint_dimension(std::span<const std::int64_t> dims) {
  if (dims.empty()) throw ArgumentError("state needs at least one party");
  std::int64_t d = 1;
  for (std::int64_t di : dims) {
    if (di < 2) throw ArgumentError("party dimensions must be >= 2");
    if (d > PureState::kMaxJointDim / di) {
      throw ArgumentError("joint dimension exceeds the 2^20 cap");
    }
    d *= di;
  }
  return d;
}

PureState::PureState(std::vector<std::int64_t> dims, Eigen::VectorXcd amps,
                     bool normalize)
    : dims_(std::move(dims)), amps_(std::move(amps)) {
  const std::int64_t d = joint_dimension(dims_);
  if (amps_.size() != d) {
    throw DimensionError("amplitude count " + std::to_string(amps_.size()) +
                         " does not match joint dimension " +
                         std::to_string(d));
  }
  const double nrm =
      std::sqrt(kernels::norm_sq(amps_.data(), static_cast<std::size_t>(d)));
  if (nrm == 0.0) throw NormalizationError("state has zero norm");
  if (std::abs(nrm - 1.0) <= 1e-9) return;  // keep amplitudes bit-exact
  if (std::abs(nrm - 1.0) > 1e-6 && !normalize) {
    throw NormalizationError("state norm deviates by " +
                             std::to_string(std::abs(nrm - 1.0)) +
                             "; pass normalize to accept");
  }
  kernels::scale(amps_.data(), static_cast<std::size_t>(d), cd{1.0 / nrm, 0.0});
}

cd inner_product(const PureState& a, const PureState& b) {
  if (a.dims() != b.dims()) {
    throw DimensionError("inner product requires identical dims");
  }
  return kernels::cdot(a.amps().data(), b.amps().data(),
                       static_cast<std::size_t>(a.dim()));
}

double fidelity(const PureState& a, const PureState& b) {
  return std::norm(inner_product(a, b));
}

PureState tensor_product(const PureState& a, const PureState& b) {
  std::vector<std::int64_t> dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  joint_dimension(dims);  // cap check before allocating
  Eigen::VectorXcd amps(a.dim() * b.dim());
  for (std::int64_t i = 0; i < a.dim(); ++i) {
    amps.segment(i * b.dim(), b.dim()) = a.amp(i) * b.amps();
  }
  return PureState(std::move(dims), std::move(amps));
}

DensityMatrix::DensityMatrix(std::vector<std::int64_t> dims,
                             Eigen::MatrixXcd matrix, Check check)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const std::int64_t d = joint_dimension(dims_);
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw DimensionError("density matrix side does not match joint dimension");
  }
  const double herm_dev =
      (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (herm_dev > 1e-9) {
    throw ArgumentError("density matrix not Hermitian (deviation " +
                        std::to_string(herm_dev) + ")");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
  const double tr_dev = std::abs(matrix_.trace().real() - 1.0) +
                        std::abs(matrix_.trace().imag());
  if (tr_dev > 1e-9) {
    throw ArgumentError("density matrix trace deviates from 1 by " +
                        std::to_string(tr_dev));
  }
  if (check == Check::full) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-9) {
      throw NonPSDError("density matrix has eigenvalue " +
                        std::to_string(es.eigenvalues().minCoeff()));
    }
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  Eigen::MatrixXcd m = psi.amps() * psi.amps().adjoint();
  return DensityMatrix(psi.dims(), std::move(m), Check::hermitian);
}

DensityMatrix DensityMatrix::mixture(std::span<const double> probs,
                                     std::span<const PureState> states) {
  if (probs.size() != states.size() || probs.empty()) {
    throw ArgumentError("mixture needs matching, non-empty probs and states");
  }
  double total = 0.0;
  for (double p : probs) {
    if (p < -1e-12) throw ArgumentError("mixture probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw ArgumentError("mixture probabilities sum to " +
                        std::to_string(total));
  }
  const auto& dims = states[0].dims();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(states[0].dim(), states[0].dim());
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i].dims() != dims) {
      throw DimensionError("mixture members must share dims");
    }
    m.noalias() += (probs[i] / total) * states[i].amps() *
                   states[i].amps().adjoint();
  }
  return DensityMatrix(dims, std::move(m), Check::hermitian);
}

}  // namespace entscope
