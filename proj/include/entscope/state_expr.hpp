#pragma once

#include <string_view>

#include "entscope/state.hpp"

namespace entscope {

/// Parses a state expression over the grammar
///   expr  := term ('*' term)*                (tensor product, left to right)
///   term  := ghz(n) | w(n) | bell(psip|psim|phip|phim) | ket(bitstring)
///          | rand(d1,...,dk, seed) | file:PATH
/// PATH points to a JSON state file {"dims":[...], "amps":[[re,im],...]}.
PureState parse_state(std::string_view spec, bool normalize = false);

/// Parses a density-matrix spec: a convex mixture "p1 * SPEC1 + p2 * SPEC2
/// ...", a plain pure spec (weight 1), or file:PATH where the JSON carries
/// {"dims", "matrix"}.
DensityMatrix parse_density(std::string_view spec, bool normalize = false);

PureState load_state_file(const std::string& path, bool normalize = false);
void save_state_file(const PureState& psi, const std::string& path);

}  // namespace entscope
