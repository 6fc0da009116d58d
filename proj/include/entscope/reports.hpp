#pragma once

#include <json.hpp>
#include <string>

#include "entscope/classify.hpp"
#include "entscope/coherence.hpp"
#include "entscope/geometric.hpp"
#include "entscope/roof.hpp"

namespace entscope::reports {

using ordered_json = nlohmann::ordered_json;

/// %.17g rendering used by every CSV emitter (round-trip exact).
std::string format_double(double v);

ordered_json state_json(const PureState& psi);
ordered_json classification_json(const ClassificationResult& r);
ordered_json gm_json(const GmResult& r);
ordered_json coherence_json(const CoherenceResult& r);
ordered_json theorem5_json(const Theorem5Report& r);
ordered_json roof_json(const RoofResult& r);
ordered_json gm_mixed_json(const GmMixedResult& r);

// CSV column orders are frozen (see README).
std::string classification_csv(const ClassificationResult& r);
std::string gm_csv(const GmResult& r);              // per-partition table
std::string coherence_csv(const CoherenceResult& r);
std::string theorem5_csv(const Theorem5Report& r);  // one row
std::string gm_mixed_csv(const GmMixedResult& r);

}  // namespace entscope::reports
