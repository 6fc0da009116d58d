#pragma once

#include <cstdint>
#include <string_view>

#include "entscope/state.hpp"

namespace entscope {

enum class BellKind { psi_plus, psi_minus, phi_plus, phi_minus };

/// (|0...0> + |1...1>)/sqrt(2) on n qubits, n >= 2.
PureState ghz_state(int n);

/// Equal superposition of the weight-1 computational states, n >= 2.
PureState w_state(int n);

PureState bell_state(BellKind kind);

/// Computational basis state of a qubit register, e.g. "01" -> |01>.
PureState ket(std::string_view bits);

/// Basis state |index> for arbitrary per-party dimensions.
PureState computational_ket(std::vector<std::int64_t> dims,
                            std::int64_t index);

/// Haar-like random pure state (normalized complex Gaussian), reproducible
/// from the seed.
PureState random_pure_state(std::vector<std::int64_t> dims,
                            std::uint64_t seed);

}  // namespace entscope
