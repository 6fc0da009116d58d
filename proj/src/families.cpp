#include "entscope/families.hpp"

#include <cmath>
#include <random>

#include "entscope/errors.hpp"
#include "entscope/random.hpp"

namespace entscope {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

PureState ghz_state(int n) {
  if (n < 2) throw ArgumentError("ghz needs n >= 2 qubits");
  std::vector<std::int64_t> dims(n, 2);
  const std::int64_t d = joint_dimension(dims);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d);
  amps[0] = kInvSqrt2;
  amps[d - 1] = kInvSqrt2;
  return PureState(std::move(dims), std::move(amps));
}

PureState w_state(int n) {
  if (n < 2) throw ArgumentError("w needs n >= 2 qubits");
  std::vector<std::int64_t> dims(n, 2);
  const std::int64_t d = joint_dimension(dims);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d);
  const double a = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    amps[std::int64_t{1} << (n - 1 - i)] = a;  // party i excited
  }
  return PureState(std::move(dims), std::move(amps));
}

PureState bell_state(BellKind kind) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  switch (kind) {
    case BellKind::psi_plus:
      amps[1] = kInvSqrt2;
      amps[2] = kInvSqrt2;
      break;
    case BellKind::psi_minus:
      amps[1] = kInvSqrt2;
      amps[2] = -kInvSqrt2;
      break;
    case BellKind::phi_plus:
      amps[0] = kInvSqrt2;
      amps[3] = kInvSqrt2;
      break;
    case BellKind::phi_minus:
      amps[0] = kInvSqrt2;
      amps[3] = -kInvSqrt2;
      break;
  }
  return PureState({2, 2}, std::move(amps));
}

PureState ket(std::string_view bits) {
  if (bits.empty()) throw ArgumentError("ket needs at least one bit");
  std::vector<std::int64_t> dims(bits.size(), 2);
  std::int64_t index = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw ArgumentError("ket accepts only 0/1 bits, got '" +
                          std::string(1, c) + "'");
    }
    index = index * 2 + (c - '0');
  }
  return computational_ket(std::move(dims), index);
}

PureState computational_ket(std::vector<std::int64_t> dims,
                            std::int64_t index) {
  const std::int64_t d = joint_dimension(dims);
  if (index < 0 || index >= d) {
    throw IndexError("basis index out of range");
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(d);
  amps[index] = 1.0;
  return PureState(std::move(dims), std::move(amps));
}

PureState random_pure_state(std::vector<std::int64_t> dims,
                            std::uint64_t seed) {
  const std::int64_t d = joint_dimension(dims);
  std::mt19937_64 rng(mix_seed(seed));
  Eigen::VectorXcd amps = random_unit_vector(d, rng);
  return PureState(std::move(dims), std::move(amps));
}

}  // namespace entscope
