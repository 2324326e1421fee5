#pragma once

#include <json.hpp>

#include "fptlab/body.hpp"
#include "fptlab/conditions.hpp"
#include "fptlab/geometry.hpp"
#include "fptlab/iteration.hpp"
#include "fptlab/ledger.hpp"
#include "fptlab/mapping.hpp"
#include "fptlab/space.hpp"

// JSON encodings used by reports and the CLI. nlohmann's object type keeps
// keys sorted, so a dump of any value built here is byte-stable for equal
// inputs — the determinism guarantees lean on that.

namespace fptlab {

nlohmann::json to_json(const SpaceDescriptor& space);
SpaceDescriptor space_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConvexBody& body);
ConvexBody body_from_json(const nlohmann::json& j);

// Closure-backed rules encode as {"type": "closure"} and refuse to decode:
// a std::function has no faithful wire form.
nlohmann::json to_json(const MappingSpec& map);
MappingSpec mapping_from_json(const nlohmann::json& j);

const char* condition_verdict_name(ConditionVerdict v);
nlohmann::json to_json(const ConditionReport& report);

nlohmann::json to_json(const ARBound& bound);

nlohmann::json to_json(const ModulusEstimate& estimate);

nlohmann::json to_json(const EntailmentReport& report);

}  // namespace fptlab
