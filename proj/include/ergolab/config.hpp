#pragma once

#include <string>

#include "json.hpp"

#include "ergolab/circle_map.hpp"
#include "ergolab/classify.hpp"
#include "ergolab/lab.hpp"
#include "ergolab/performance.hpp"
#include "ergolab/structure.hpp"
#include "ergolab/subaction.hpp"

namespace ergolab {

using json = nlohmann::json;

// { "degree": d, "sin": [a_1, ...], "cos": [b_1, ...] }
ExpandingCircleMap map_from_json(const json& j);
json to_json(const ExpandingCircleMap& map);

// { "const": c, "cos": [...], "sin": [...] }
TrigPolynomial poly_from_json(const json& j);
json to_json(const TrigPolynomial& f);

// { "base": f, "directions": [f, ...], "rho": r }
PerturbationBasis basis_from_json(const json& j);
// { "base": f, "shift": true } or { "base": f, "directions": [f] }
ScalarFamily scalar_family_from_json(const json& j);

json load_json_file(const std::string& path);

json to_json(const Classification& c);
json to_json(const CriticalReport& r);
json to_json(const IdentityResult& r);
json to_json(const PrevalenceReport& r);
json to_json(const LockingSummary& s);
json to_json(const SweepRecord& r);

}  // namespace ergolab
