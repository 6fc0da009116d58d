#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace entscope {

using cd = std::complex<double>;

/// Dense n-party pure state. Amplitudes are row-major with party 1 slowest:
/// index(j_1..j_n) = ((j_1 d_2 + j_2) d_3 + j_3) ... Immutable after
/// construction.
///
/// Construction keeps amplitudes bit-exact when |norm - 1| <= 1e-9;
/// deviations up to 1e-6 are renormalized, larger ones are rejected unless
/// `normalize` is set.
class PureState {
public:
  static constexpr std::int64_t kMaxJointDim = std::int64_t{1} << 20;

  PureState(std::vector<std::int64_t> dims, Eigen::VectorXcd amps,
            bool normalize = false);

  int party_count() const { return static_cast<int>(dims_.size()); }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::int64_t dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  cd amp(std::int64_t i) const { return amps_[i]; }

private:
  std::vector<std::int64_t> dims_;
  Eigen::VectorXcd amps_;
};

/// <a|b>, conjugate-linear in a. Throws DimensionError on mismatched dims.
cd inner_product(const PureState& a, const PureState& b);

/// |<a|b>|^2.
double fidelity(const PureState& a, const PureState& b);

/// Kronecker composition; dims concatenate left-to-right (left factor's
/// parties are slower).
PureState tensor_product(const PureState& a, const PureState& b);

/// Joint dimension of a party dimension list (overflow/cap checked).
std::int64_t joint_dimension(std::span<const std::int64_t> dims);

/// Hermitian, PSD, trace-one operator on the joint space.
class DensityMatrix {
public:
  enum class Check {
    full,       // hermiticity, trace, and min-eigenvalue
    hermitian,  // hermiticity and trace only (PSD guaranteed by caller)
  };

  DensityMatrix(std::vector<std::int64_t> dims, Eigen::MatrixXcd matrix,
                Check check = Check::full);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix mixture(std::span<const double> probs,
                               std::span<const PureState> states);

  int party_count() const { return static_cast<int>(dims_.size()); }
  const std::vector<std::int64_t>& dims() const { return dims_; }
  std::int64_t dim() const { return matrix_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

private:
  std::vector<std::int64_t> dims_;
  Eigen::MatrixXcd matrix_;
};

/// Schmidt data across one bipartite cut: descending coefficients with
/// orthonormal left/right vectors, sum of squares 1.
struct SchmidtResult {
  Eigen::VectorXd coefficients;
  Eigen::MatrixXcd leftVectors;
  Eigen::MatrixXcd rightVectors;
};

}  // namespace entscope
