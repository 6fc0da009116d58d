#include "entscope/reports.hpp"

#include <cstdio>

namespace entscope::reports {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

ordered_json vector_json(const Eigen::VectorXcd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back({v[i].real(), v[i].imag()});
  }
  return out;
}

ordered_json matrix_json(const Eigen::MatrixXcd& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    out.push_back(std::move(row));
  }
  return out;
}

ordered_json block_product_json(const BlockProductState& bp) {
  ordered_json vecs = ordered_json::array();
  for (const auto& v : bp.vectors) vecs.push_back(vector_json(v));
  return ordered_json{{"partition", bp.partition.to_string()},
                      {"vectors", std::move(vecs)}};
}

}  // namespace

ordered_json state_json(const PureState& psi) {
  return ordered_json{{"dims", psi.dims()}, {"amps", vector_json(psi.amps())}};
}

ordered_json classification_json(const ClassificationResult& r) {
  return ordered_json{{"mSep", r.mSep},
                      {"kEnt", r.kEnt},
                      {"finest", r.finest.to_string()},
                      {"blockEntangled", r.blockEntangled}};
}

ordered_json gm_json(const GmResult& r) {
  ordered_json per = ordered_json::array();
  for (const auto& row : r.diagnostics.perPartition) {
    per.push_back(ordered_json{{"partition", row.partition},
                               {"overlapSq", row.overlapSq},
                               {"iterations", row.iterations},
                               {"converged", row.converged}});
  }
  return ordered_json{
      {"value", r.value},
      {"overlapSq", r.overlapSq},
      {"bestPartition", r.bestPartition.to_string()},
      {"closest", block_product_json(r.closest)},
      {"diagnostics",
       ordered_json{{"restarts", r.diagnostics.restarts},
                    {"iterations", r.diagnostics.iterations},
                    {"converged", r.diagnostics.converged},
                    {"perPartition", std::move(per)}}}};
}

ordered_json coherence_json(const CoherenceResult& r) {
  ordered_json out{{"value", r.value},
                   {"maxFidelity", r.maxFidelity},
                   {"bestElementIndex", r.bestElementIndex}};
  if (r.bestBasis) {
    ordered_json bases = ordered_json::array();
    for (const auto& u : r.bestBasis->block_bases()) {
      bases.push_back(matrix_json(u));
    }
    out["bestBasis"] =
        ordered_json{{"partition", r.bestBasis->partition().to_string()},
                     {"blockBases", std::move(bases)}};
  }
  out["diagnostics"] =
      ordered_json{{"bestPartition", r.diagnostics.bestPartition},
                   {"samples", r.diagnostics.samples},
                   {"seed", r.diagnostics.seed}};
  return out;
}

ordered_json theorem5_json(const Theorem5Report& r) {
  return ordered_json{{"state", r.label},       {"m", r.m},
                      {"gm", r.gm},             {"coherence", r.coherence},
                      {"gap", r.gap},           {"tolerance", r.tolerance},
                      {"pass", r.pass}};
}

ordered_json roof_json(const RoofResult& r) {
  ordered_json states = ordered_json::array();
  for (const auto& s : r.bestDecomposition.states) {
    states.push_back(state_json(s));
  }
  return ordered_json{
      {"upperBound", r.upperBound},
      {"L", r.L},
      {"decomposition", ordered_json{{"probs", r.bestDecomposition.probs},
                                     {"states", std::move(states)}}},
      {"diagnostics", ordered_json{{"samples", r.diagnostics.samples},
                                   {"refineSteps", r.diagnostics.refineSteps},
                                   {"seed", r.diagnostics.seed}}}};
}

ordered_json gm_mixed_json(const GmMixedResult& r) {
  return ordered_json{{"m", r.m},
                      {"gm", roof_json(r.gm)},
                      {"coherenceSq", roof_json(r.coherenceSq)},
                      {"gap", r.gap}};
}

std::string classification_csv(const ClassificationResult& r) {
  std::string flags;
  for (std::size_t i = 0; i < r.blockEntangled.size(); ++i) {
    if (i > 0) flags += ';';
    flags += r.blockEntangled[i] ? '1' : '0';
  }
  return "mSep,kEnt,finest,blockEntangled\n" + std::to_string(r.mSep) + "," +
         std::to_string(r.kEnt) + "," + r.finest.to_string() + "," + flags +
         "\n";
}

std::string gm_csv(const GmResult& r) {
  std::string out = "partition,overlapSq,iterations,converged\n";
  for (const auto& row : r.diagnostics.perPartition) {
    out += row.partition + "," + format_double(row.overlapSq) + "," +
           std::to_string(row.iterations) + "," +
           (row.converged ? "1" : "0") + "\n";
  }
  return out;
}

std::string coherence_csv(const CoherenceResult& r) {
  std::string idx;
  for (std::size_t i = 0; i < r.bestElementIndex.size(); ++i) {
    if (i > 0) idx += ';';
    idx += std::to_string(r.bestElementIndex[i]);
  }
  return "value,maxFidelity,bestPartition,bestElementIndex\n" +
         format_double(r.value) + "," + format_double(r.maxFidelity) + "," +
         r.diagnostics.bestPartition + "," + idx + "\n";
}

std::string theorem5_csv(const Theorem5Report& r) {
  return "state,m,gm,coherence,gap,pass\n" + r.label + "," +
         std::to_string(r.m) + "," + format_double(r.gm) + "," +
         format_double(r.coherence) + "," + format_double(r.gap) + "," +
         (r.pass ? "1" : "0") + "\n";
}

std::string gm_mixed_csv(const GmMixedResult& r) {
  return "m,L,gmUpperBound,coherenceSqUpperBound,gap\n" +
         std::to_string(r.m) + "," + std::to_string(r.gm.L) + "," +
         format_double(r.gm.upperBound) + "," +
         format_double(r.coherenceSq.upperBound) + "," +
         format_double(r.gap) + "\n";
}

}  // namespace entscope::reports
