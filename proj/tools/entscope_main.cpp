#include <CLI11.hpp>
#include <ctime>
#include <iostream>
#include <string>

#include "entscope/classify.hpp"
#include "entscope/coherence.hpp"
#include "entscope/errors.hpp"
#include "entscope/geometric.hpp"
#include "entscope/reports.hpp"
#include "entscope/roof.hpp"
#include "entscope/state_expr.hpp"

namespace {

using entscope::reports::ordered_json;

struct Options {
  std::string spec;
  int m = 0;
  int k = 0;
  int n = 0;
  bool m_set = false;
  bool k_set = false;
  double tol = 0.0;
  bool tol_set = false;
  int restarts = 32;
  int maxIter = 500;
  std::uint64_t seed = 1;
  int L = 0;
  bool L_set = false;
  std::string output = "json";
  bool normalize = false;
  bool deterministic = false;
};

std::string utc_timestamp() {
  char buf[32];
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

entscope::AlsConfig als_config(const Options& opt) {
  entscope::AlsConfig cfg;
  cfg.restarts = opt.restarts;
  cfg.maxIterations = opt.maxIter;
  cfg.seed = opt.seed;
  return cfg;
}

void emit_json(ordered_json j, const Options& opt) {
  if (!opt.deterministic) j["timestamp"] = utc_timestamp();
  std::cout << j.dump(2) << '\n';
}

void add_common(CLI::App* cmd, Options& opt) {
  cmd->add_option("--restarts", opt.restarts, "optimizer restarts");
  cmd->add_option("--max-iter", opt.maxIter, "optimizer iteration cap");
  cmd->add_option("--seed", opt.seed, "random seed");
  cmd->add_option("--output", opt.output, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--normalize", opt.normalize,
                "renormalize out-of-tolerance input states");
  cmd->add_flag("--deterministic", opt.deterministic,
                "suppress the timestamp field for byte-stable output");
}

int run_classify(const Options& opt) {
  const double tol = opt.tol_set ? opt.tol : entscope::kDefaultProductTol;
  const entscope::PureState psi =
      entscope::parse_state(opt.spec, opt.normalize);
  const entscope::ClassificationResult r = entscope::classify(psi, tol);
  if (opt.output == "csv") {
    std::cout << entscope::reports::classification_csv(r);
    return 0;
  }
  ordered_json j = entscope::reports::classification_json(r);
  if (opt.m_set) {
    const auto [condI, condII] = entscope::theorem1_check(psi, opt.m, tol);
    j["theorem1"] = ordered_json{{"m", opt.m}, {"condI", condI},
                                 {"condII", condII}};
  }
  if (opt.k_set) {
    const auto [condI, condII] = entscope::theorem3_check(psi, opt.k, tol);
    j["theorem3"] = ordered_json{{"k", opt.k}, {"condI", condI},
                                 {"condII", condII}};
  }
  emit_json(std::move(j), opt);
  return 0;
}

int run_gm(const Options& opt) {
  const entscope::PureState psi =
      entscope::parse_state(opt.spec, opt.normalize);
  const entscope::GmResult r = entscope::gm_m(psi, opt.m, als_config(opt));
  if (opt.output == "csv") {
    std::cout << entscope::reports::gm_csv(r);
  } else {
    emit_json(entscope::reports::gm_json(r), opt);
  }
  return 0;
}

int run_coherence(const Options& opt, bool direct) {
  const entscope::PureState psi =
      entscope::parse_state(opt.spec, opt.normalize);
  const entscope::CoherenceResult r =
      direct ? entscope::direct_basis_search(psi, opt.m, als_config(opt))
             : entscope::min_fidelity_coherence(psi, opt.m, als_config(opt));
  if (opt.output == "csv") {
    std::cout << entscope::reports::coherence_csv(r);
  } else {
    emit_json(entscope::reports::coherence_json(r), opt);
  }
  return 0;
}

int run_verify(const Options& opt) {
  const double tol = opt.tol_set ? opt.tol : 1e-6;
  const entscope::PureState psi =
      entscope::parse_state(opt.spec, opt.normalize);
  const entscope::Theorem5Report r =
      entscope::verify_theorem5(psi, opt.m, als_config(opt), tol, opt.spec);
  if (opt.output == "csv") {
    std::cout << entscope::reports::theorem5_csv(r);
  } else {
    emit_json(entscope::reports::theorem5_json(r), opt);
  }
  return 0;
}

int run_roof(const Options& opt) {
  const entscope::DensityMatrix rho =
      entscope::parse_density(opt.spec, opt.normalize);
  const int rank =
      static_cast<int>(entscope::spectral_decomposition(rho).states.size());
  const int L = opt.L_set ? opt.L : entscope::default_ensemble_size(rank);
  const entscope::GmMixedResult r =
      entscope::gm_mixed(rho, opt.m, L, als_config(opt));
  if (opt.output == "csv") {
    std::cout << entscope::reports::gm_mixed_csv(r);
  } else {
    emit_json(entscope::reports::gm_mixed_json(r), opt);
  }
  return 0;
}

int run_partitions(const Options& opt) {
  if (opt.n < 1) throw entscope::ArgumentError("--n must be >= 1");
  if (opt.m_set) {
    entscope::PartitionEnumerator en(opt.n, opt.m);
    std::vector<std::string> parts;
    while (auto p = en.next()) parts.push_back(p->to_string());
    if (opt.output == "csv") {
      std::cout << "partition\n";
      for (const auto& s : parts) std::cout << s << '\n';
      return 0;
    }
    ordered_json j{{"n", opt.n},
                   {"m", opt.m},
                   {"count", parts.size()},
                   {"partitions", parts}};
    emit_json(std::move(j), opt);
    return 0;
  }
  if (opt.output == "csv") {
    std::cout << "m,count\n";
    for (int m = 1; m <= opt.n; ++m) {
      std::cout << m << ',' << entscope::stirling2(opt.n, m) << '\n';
    }
    return 0;
  }
  ordered_json counts = ordered_json::array();
  for (int m = 1; m <= opt.n; ++m) {
    counts.push_back(ordered_json{{"m", m},
                                  {"count", entscope::stirling2(opt.n, m)}});
  }
  ordered_json j{{"n", opt.n},
                 {"counts", std::move(counts)},
                 {"bell", entscope::bell_number(opt.n)}};
  emit_json(std::move(j), opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entscope: multipartite entanglement and coherence measures"};
  app.require_subcommand(1);
  Options opt;
  bool direct = false;

  auto* classify = app.add_subcommand(
      "classify", "separability level and entanglement depth of a pure state");
  classify->add_option("spec", opt.spec, "state expression")->required();
  classify->add_option("--tol", opt.tol, "product test tolerance")
      ->each([&](const std::string&) { opt.tol_set = true; });
  classify->add_option("--m", opt.m, "also run the level-m condition checks")
      ->each([&](const std::string&) { opt.m_set = true; });
  classify->add_option("--k", opt.k, "also run the depth-k condition checks")
      ->each([&](const std::string&) { opt.k_set = true; });
  add_common(classify, opt);

  auto* gm = app.add_subcommand("gm", "geometric measure over m-block partitions");
  gm->add_option("spec", opt.spec, "state expression")->required();
  gm->add_option("--m", opt.m, "block count")->required();
  add_common(gm, opt);

  auto* coh = app.add_subcommand(
      "coherence", "minimum fidelity coherence over m-block product bases");
  coh->add_option("spec", opt.spec, "state expression")->required();
  coh->add_option("--m", opt.m, "block count")->required();
  coh->add_flag("--direct", direct,
                "cross-validate with the direct basis search");
  add_common(coh, opt);

  auto* verify = app.add_subcommand(
      "verify", "compare the geometric measure against squared coherence");
  verify->add_option("spec", opt.spec, "state expression")->required();
  verify->add_option("--m", opt.m, "block count")->required();
  verify->add_option("--tol", opt.tol, "pass/fail gap tolerance")
      ->each([&](const std::string&) { opt.tol_set = true; });
  add_common(verify, opt);

  auto* roof = app.add_subcommand(
      "roof", "convex-roof upper bounds for a mixed state");
  roof->add_option("spec", opt.spec,
                   "mixture \"p1 * SPEC1 + p2 * SPEC2\" or file:PATH")
      ->required();
  roof->add_option("--m", opt.m, "block count")->required();
  roof->add_option("--L", opt.L, "ensemble size (default rank+2, cap rank^2)")
      ->each([&](const std::string&) { opt.L_set = true; });
  add_common(roof, opt);

  auto* parts = app.add_subcommand("partitions",
                                   "list partitions or count them per m");
  parts->add_option("--n", opt.n, "party count")->required();
  parts->add_option("--m", opt.m, "block count (lists the partitions)")
      ->each([&](const std::string&) { opt.m_set = true; });
  add_common(parts, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) return run_classify(opt);
    if (gm->parsed()) return run_gm(opt);
    if (coh->parsed()) return run_coherence(opt, direct);
    if (verify->parsed()) return run_verify(opt);
    if (roof->parsed()) return run_roof(opt);
    if (parts->parsed()) return run_partitions(opt);
  } catch (const entscope::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const entscope::FileError& e) {
    std::cerr << "file error: " << e.what() << '\n';
    return 2;
  } catch (const entscope::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return 2;
  } catch (const entscope::DimensionError& e) {
    std::cerr << "dimension error: " << e.what() << '\n';
    return 3;
  } catch (const entscope::IndexError& e) {
    std::cerr << "index error: " << e.what() << '\n';
    return 3;
  } catch (const entscope::Error& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
