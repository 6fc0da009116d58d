#include "entscope/roof.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "entscope/coherence.hpp"
#include "entscope/errors.hpp"
#include "entscope/parallel.hpp"
#include "entscope/random.hpp"

namespace entscope {

void validate_decomposition(const Decomposition& d, const DensityMatrix& rho,
                            double tol) {
  if (d.probs.size() != d.states.size() || d.probs.empty()) {
    throw ArgumentError("decomposition needs matching probs and states");
  }
  double total = 0.0;
  for (double p : d.probs) {
    if (p < -1e-12) throw ArgumentError("decomposition probability < 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ArgumentError("decomposition probabilities sum to " +
                        std::to_string(total));
  }
  Eigen::MatrixXcd rebuilt =
      Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (std::size_t i = 0; i < d.states.size(); ++i) {
    if (d.states[i].dims() != rho.dims()) {
      throw DimensionError("decomposition member dims do not match rho");
    }
    rebuilt.noalias() +=
        d.probs[i] * d.states[i].amps() * d.states[i].amps().adjoint();
  }
  const double dev = (rebuilt - rho.matrix()).cwiseAbs().maxCoeff();
  if (dev > tol) {
    throw ArgumentError("decomposition fails to reconstruct rho (deviation " +
                        std::to_string(dev) + ")");
  }
}

Decomposition spectral_decomposition(const DensityMatrix& rho, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.matrix());
  const Eigen::VectorXd& evals = es.eigenvalues();  // ascending
  if (evals.minCoeff() < -1e-8) {
    throw NonPSDError("density matrix has eigenvalue " +
                      std::to_string(evals.minCoeff()));
  }
  Decomposition d;
  for (Eigen::Index j = evals.size() - 1; j >= 0; --j) {
    if (evals[j] <= tol) break;
    d.probs.push_back(evals[j]);
    d.states.emplace_back(rho.dims(), es.eigenvectors().col(j));
  }
  if (d.probs.empty()) throw NonPSDError("density matrix has no spectrum above tol");
  return d;
}

Decomposition ensemble_from_isometry(const Decomposition& spectral,
                                     const Eigen::MatrixXcd& V) {
  const int r = static_cast<int>(spectral.states.size());
  if (V.cols() != r) {
    throw IsometryError("isometry must have rank(rho) columns");
  }
  const double dev =
      (V.adjoint() * V - Eigen::MatrixXcd::Identity(r, r)).cwiseAbs().maxCoeff();
  if (dev > 1e-8) {
    throw IsometryError("V^H V deviates from identity by " +
                        std::to_string(dev));
  }
  const auto& dims = spectral.states[0].dims();
  Decomposition out;
  for (Eigen::Index i = 0; i < V.rows(); ++i) {
    Eigen::VectorXcd unnorm =
        Eigen::VectorXcd::Zero(spectral.states[0].dim());
    for (int j = 0; j < r; ++j) {
      unnorm += V(i, j) * std::sqrt(spectral.probs[j]) *
                spectral.states[j].amps();
    }
    const double p = unnorm.squaredNorm();
    if (p < 1e-14) continue;
    out.probs.push_back(p);
    out.states.emplace_back(dims, unnorm / std::sqrt(p));
  }
  return out;
}

namespace {

Eigen::MatrixXcd reorthonormalize(const Eigen::MatrixXcd& v) {
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(v);
  return qr.householderQ() *
         Eigen::MatrixXcd::Identity(v.rows(), v.cols());
}

}  // namespace

RoofResult roof_upper_bound(const DensityMatrix& rho, const PureFunctional& f,
                            int L, const AlsConfig& cfg) {
  cfg.validate();
  const Decomposition spectral = spectral_decomposition(rho);
  const int r = static_cast<int>(spectral.states.size());
  if (L < r) {
    throw ArgumentError("ensemble size L=" + std::to_string(L) +
                        " below rank " + std::to_string(r));
  }

  auto evaluate = [&](const Eigen::MatrixXcd& v) {
    Decomposition d = ensemble_from_isometry(spectral, v);
    validate_decomposition(d, rho);
    double acc = 0.0;
    for (std::size_t i = 0; i < d.states.size(); ++i) {
      acc += d.probs[i] * f(d.states[i]);
    }
    return std::make_pair(acc, std::move(d));
  };

  // Identity isometry first: the bound never exceeds the spectral average.
  Eigen::MatrixXcd bestV = Eigen::MatrixXcd::Identity(L, r);
  auto [bestVal, bestDecomp] = evaluate(bestV);

  std::vector<double> vals(cfg.restarts);
  std::vector<Eigen::MatrixXcd> isos(cfg.restarts);
  parallel_for(cfg.restarts, [&](std::int64_t s) {
    std::mt19937_64 rng(
        mix_seed(cfg.seed, 0xA001, static_cast<std::uint64_t>(s)));
    isos[s] = haar_isometry(L, r, rng);
    vals[s] = evaluate(isos[s]).first;
  });
  for (int s = 0; s < cfg.restarts; ++s) {
    if (vals[s] < bestVal) {
      bestVal = vals[s];
      bestV = isos[s];
    }
  }

  // Greedy perturbation refinement: scale 0.1, halved after 20 consecutive
  // rejections, floor 1e-4.
  std::mt19937_64 rng(mix_seed(cfg.seed, 0xB002));
  double scale = 0.1;
  int rejects = 0;
  int steps = 0;
  while (scale >= 1e-4 && steps < cfg.maxIterations) {
    Eigen::MatrixXcd cand =
        reorthonormalize(bestV + scale * gaussian_matrix(L, r, rng));
    const double val = evaluate(cand).first;
    ++steps;
    if (val < bestVal) {
      bestVal = val;
      bestV = std::move(cand);
      rejects = 0;
    } else if (++rejects >= 20) {
      scale *= 0.5;
      rejects = 0;
    }
  }

  RoofResult out;
  out.upperBound = bestVal;
  out.bestDecomposition = evaluate(bestV).second;
  out.L = L;
  out.diagnostics = RoofDiagnostics{cfg.restarts, steps, cfg.seed};
  return out;
}

GmMixedResult gm_mixed(const DensityMatrix& rho, int m, int L,
                       const AlsConfig& cfg) {
  const int n = rho.party_count();
  if (m < 1 || m > n) throw ArgumentError("gm_mixed needs 1 <= m <= n");

  PureFunctional gmF = [m, &cfg](const PureState& psi) {
    return gm_m(psi, m, cfg).value;
  };
  PureFunctional cohSqF = [m, &cfg](const PureState& psi) {
    const double c = min_fidelity_coherence(psi, m, cfg).value;
    return c * c;
  };

  GmMixedResult out;
  out.m = m;
  out.gm = roof_upper_bound(rho, gmF, L, cfg);
  out.coherenceSq = roof_upper_bound(rho, cohSqF, L, cfg);
  out.gap = std::abs(out.gm.upperBound - out.coherenceSq.upperBound);
  return out;
}

int default_ensemble_size(int rank) {
  if (rank < 1) throw ArgumentError("rank must be >= 1");
  return std::min(rank + 2, rank * rank);
}

}  // namespace entscope
