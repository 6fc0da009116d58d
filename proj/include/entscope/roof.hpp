#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "entscope/geometric.hpp"
#include "entscope/state.hpp"

namespace entscope {

/// Pure-state ensemble realizing a density matrix.
struct Decomposition {
  std::vector<double> probs;
  std::vector<PureState> states;
};

/// Throws unless probs are non-negative, sum to 1 within 1e-9, and the
/// ensemble reconstructs rho entrywise within tol.
void validate_decomposition(const Decomposition& d, const DensityMatrix& rho,
                            double tol = 1e-8);

/// Eigen-decomposition with eigenvalues > tol retained, descending.
/// Throws NonPSDError when an eigenvalue is below -1e-8.
Decomposition spectral_decomposition(const DensityMatrix& rho,
                                     double tol = 1e-12);

/// Ensemble classified by an isometry V (L x r, V^H V = I) acting on the
/// spectral decomposition: |psi~_i> = sum_j V_ij sqrt(lambda_j) |e_j>.
/// Zero-probability members are dropped.
Decomposition ensemble_from_isometry(const Decomposition& spectral,
                                     const Eigen::MatrixXcd& V);

using PureFunctional = std::function<double(const PureState&)>;

struct RoofDiagnostics {
  int samples = 0;
  int refineSteps = 0;
  std::uint64_t seed = 0;
};

/// Upper bound on the convex-roof extension of a pure-state functional:
/// min over sampled decompositions of sum_i p_i f(psi_i). Always an upper
/// bound on the true roof; exact for rank-1 inputs.
struct RoofResult {
  double upperBound = 0.0;
  Decomposition bestDecomposition;
  int L = 0;
  RoofDiagnostics diagnostics;
};

RoofResult roof_upper_bound(const DensityMatrix& rho, const PureFunctional& f,
                            int L, const AlsConfig& cfg);

/// Runs the roof search twice, with the geometric measure and with the
/// squared minimum fidelity coherence, and reports both bounds and their
/// gap.
struct GmMixedResult {
  int m = 0;
  RoofResult gm;
  RoofResult coherenceSq;
  double gap = 0.0;
};

GmMixedResult gm_mixed(const DensityMatrix& rho, int m, int L,
                       const AlsConfig& cfg);

/// Default ensemble size: rank + 2 capped at rank^2.
int default_ensemble_size(int rank);

}  // namespace entscope
