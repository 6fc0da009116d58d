#include "entscope/geometric.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "entscope/errors.hpp"
#include "entscope/parallel.hpp"
#include "entscope/random.hpp"
#include "entscope/tensor_ops.hpp"

namespace entscope {

void AlsConfig::validate() const {
  if (restarts < 1) throw ArgumentError("restarts must be >= 1");
  if (maxIterations < 1) throw ArgumentError("maxIterations must be >= 1");
  if (!(convergenceTol > 0.0) || convergenceTol >= 1e-6) {
    throw ArgumentError("convergenceTol must be in (0, 1e-6)");
  }
}

PureState BlockProductState::to_state(
    std::span<const std::int64_t> dims) const {
  const auto md = merged_dims(partition, dims);
  std::int64_t total = 1;
  for (auto d : md) total *= d;
  Eigen::VectorXcd t = Eigen::VectorXcd::Ones(1);
  for (std::size_t b = 0; b < vectors.size(); ++b) {
    Eigen::VectorXcd next(t.size() * md[b]);
    for (std::int64_t i = 0; i < t.size(); ++i) {
      next.segment(i * md[b], md[b]) = t[i] * vectors[b];
    }
    t.swap(next);
  }
  if (t.size() != total) throw DimensionError("block vectors incomplete");
  Eigen::VectorXcd amps = unpermute_from_block_order(t, partition, dims);
  return PureState(std::vector<std::int64_t>(dims.begin(), dims.end()),
                   std::move(amps));
}

AlsRun als_block_product(const PureState& psi, const Partition& p,
                         const AlsConfig& cfg) {
  cfg.validate();
  if (p.party_count() != psi.party_count()) {
    throw DimensionError("partition does not match the state's party count");
  }
  const int m = p.block_count();
  const BlockContraction bc(psi, p);
  const auto& md = bc.merged_dims();

  AlsRun best;
  best.overlapSq = -1.0;
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(r)));
    std::vector<Eigen::VectorXcd> vecs(m);
    for (int b = 0; b < m; ++b) vecs[b] = random_unit_vector(md[b], rng);

    AlsRun run;
    run.overlapTrace.push_back(std::norm(bc.overlap(vecs)));
    double overlap = std::sqrt(run.overlapTrace.back());
    bool dead = false;
    for (int it = 0; it < cfg.maxIterations && !dead; ++it) {
      const double prev = overlap;
      for (int f = 0; f < m; ++f) {
        Eigen::VectorXcd env = bc.environment(vecs, f);
        const double nrm = env.norm();
        if (nrm < 1e-150) {  // contraction vanished; restart cannot recover
          dead = true;
          break;
        }
        vecs[f] = env / nrm;
        overlap = nrm;
        run.overlapTrace.push_back(nrm * nrm);
      }
      run.iterations = it + 1;
      if (!dead && overlap - prev < cfg.convergenceTol) {
        run.converged = true;
        break;
      }
    }
    run.overlapSq = overlap * overlap;
    run.state = BlockProductState{p, std::move(vecs)};
    if (run.overlapSq > best.overlapSq) best = std::move(run);
    if (best.overlapSq >= 1.0 - 1e-12) break;  // cannot be beaten
  }
  return best;
}

AlsRun svd_block_product(const PureState& psi, const Partition& p) {
  if (p.block_count() != 2) {
    throw ArgumentError("svd path requires exactly two blocks");
  }
  const SchmidtResult s = schmidt(psi, p.block(0));
  AlsRun run;
  const double c0 = s.coefficients[0];
  run.overlapSq = c0 * c0;
  run.state.partition = p;
  run.state.vectors = {s.leftVectors.col(0), s.rightVectors.col(0)};
  run.iterations = 1;
  run.converged = true;
  run.overlapTrace = {run.overlapSq};
  return run;
}

ClosestResult closest_block_product(const PureState& psi, const Partition& p,
                                    const AlsConfig& cfg) {
  if (p.party_count() != psi.party_count()) {
    throw DimensionError("partition does not match the state's party count");
  }
  AlsRun run;
  if (p.block_count() == 1) {
    run.overlapSq = 1.0;
    run.state.partition = p;
    run.state.vectors = {permute_to_block_order(psi, p)};
    run.converged = true;
  } else if (p.block_count() == 2) {
    run = svd_block_product(psi, p);
  } else {
    run = als_block_product(psi, p, cfg);
  }
  return ClosestResult{run.overlapSq, std::move(run.state), run.iterations,
                       run.converged};
}

GmResult gm_m(const PureState& psi, int m, const AlsConfig& cfg) {
  cfg.validate();
  const int n = psi.party_count();
  if (m < 1 || m > n) {
    throw ArgumentError("gm_m needs 1 <= m <= n, got m=" + std::to_string(m));
  }

  std::vector<Partition> parts;
  PartitionEnumerator en(n, m);
  while (auto p = en.next()) parts.push_back(std::move(*p));

  std::vector<ClosestResult> results(parts.size());
  parallel_for(static_cast<std::int64_t>(parts.size()), [&](std::int64_t i) {
    AlsConfig sub = cfg;
    sub.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(i));
    results[i] = closest_block_product(psi, parts[i], sub);
  });

  GmResult out;
  out.diagnostics.restarts = cfg.restarts;
  out.diagnostics.perPartition.reserve(parts.size());
  std::size_t bestIdx = 0;
  double bestOverlap = -1.0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& r = results[i];
    out.diagnostics.perPartition.push_back(PartitionOverlapRow{
        parts[i].to_string(), r.overlapSq, r.iterations, r.converged});
    if (r.overlapSq > bestOverlap) {
      bestOverlap = r.overlapSq;
      bestIdx = i;
    }
  }
  if (bestOverlap > 1.0 + 1e-9) {
    throw Error("overlap exceeded 1 beyond tolerance: " +
                std::to_string(bestOverlap));
  }
  out.overlapSq = std::clamp(bestOverlap, 0.0, 1.0);
  out.value = 1.0 - out.overlapSq;
  out.bestPartition = parts[bestIdx];
  out.closest = std::move(results[bestIdx].state);
  out.diagnostics.iterations = results[bestIdx].iterations;
  out.diagnostics.converged = results[bestIdx].converged;
  return out;
}

GmResult ggm(const PureState& psi, const AlsConfig& cfg) {
  if (psi.party_count() < 2) throw ArgumentError("ggm needs n >= 2");
  return gm_m(psi, 2, cfg);
}

}  // namespace entscope
