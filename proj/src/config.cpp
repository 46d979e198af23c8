#include "ergolab/config.hpp"

#include <fstream>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

std::vector<double> coeffs(const json& j, const char* key) {
  if (!j.contains(key)) return {};
  if (!j.at(key).is_array()) throw ConfigError(std::string("'") + key + "' must be an array of numbers");
  return j.at(key).get<std::vector<double>>();
}

json fraction_json(const Fraction& r) { return json::array({r.num, r.den}); }

}  // namespace

ExpandingCircleMap map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("degree")) throw ConfigError("map needs an integer 'degree'");
  try {
    return ExpandingCircleMap(j.at("degree").get<int>(), coeffs(j, "sin"), coeffs(j, "cos"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad map: ") + e.what());
  }
}

json to_json(const ExpandingCircleMap& map) {
  return {{"degree", map.degree()}, {"sin", map.sin_coeffs()}, {"cos", map.cos_coeffs()}};
}

TrigPolynomial poly_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("performance function must be an object");
  try {
    return TrigPolynomial(j.value("const", 0.0), coeffs(j, "cos"), coeffs(j, "sin"));
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad performance function: ") + e.what());
  }
}

json to_json(const TrigPolynomial& f) {
  return {{"const", f.constant()}, {"cos", f.cos_coeffs()}, {"sin", f.sin_coeffs()}};
}

PerturbationBasis basis_from_json(const json& j) {
  std::vector<TrigPolynomial> dirs;
  if (j.contains("directions"))
    for (const auto& d : j.at("directions")) dirs.push_back(poly_from_json(d));
  return PerturbationBasis::make(std::move(dirs), j.value("rho", 0.5),
                                 j.value("bound", std::numeric_limits<double>::infinity()));
}

ScalarFamily scalar_family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("base")) throw ConfigError("family needs a 'base' function");
  TrigPolynomial base = poly_from_json(j.at("base"));
  if (j.value("shift", false)) return ScalarFamily::translation(std::move(base));
  if (!j.contains("directions") || j.at("directions").size() != 1)
    throw ConfigError("scalar sweep over a linear family needs exactly one direction");
  return ScalarFamily::linear(std::move(base), poly_from_json(j.at("directions")[0]));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

json to_json(const Classification& c) {
  return {{"class", to_string(c.kind)},
          {"orbit_word", c.best_orbit.word.str()},
          {"points", c.best_orbit.points},
          {"average", c.best_average},
          {"beta_lower", c.sandwich.lower},
          {"beta_upper", c.sandwich.upper},
          {"beta", c.sandwich.midpoint()},
          {"interp_error", c.sandwich.interp_error},
          {"gap", c.gap},
          {"margin", c.margin},
          {"tol", c.tol},
          {"localized", c.localized},
          {"rotation_number", c.best_orbit.rotation_number()},
          {"rotation", fraction_json(c.best_orbit.rotation())},
          {"note", c.note}};
}

json to_json(const CriticalReport& r) {
  json crit = json::array();
  for (const auto& cv : r.criticals)
    crit.push_back({{"point", cv.point}, {"branches", cv.branches}, {"regular", cv.regular}, {"width", cv.width}});
  json out = {{"criticals", crit}, {"verdict", to_string(r.verdict)}, {"delta", r.delta}};
  if (r.witness) out["witness"] = *r.witness;
  return out;
}

json to_json(const IdentityResult& r) {
  return {{"lhs", r.lhs},
          {"rhs_holonomy", r.rhs_holonomy},
          {"rhs_orbit", r.rhs_orbit},
          {"holonomy_residual", r.holonomy_residual},
          {"orbit_residual", r.orbit_residual},
          {"truncation_bound", r.truncation_bound},
          {"pieces", r.pieces}};
}

json to_json(const SweepRecord& r) {
  return {{"t", r.t},
          {"class", r.classification},
          {"orbit_word", r.orbit_word},
          {"rotation", fraction_json(r.rotation)},
          {"beta_lower", r.beta_lower},
          {"beta_upper", r.beta_upper},
          {"gap", r.gap},
          {"note", r.note}};
}

json to_json(const PrevalenceReport& r) {
  return {{"n_samples", r.n_samples},
          {"n_periodic", r.n_periodic},
          {"n_suspected", r.n_suspected},
          {"n_nonunique", r.n_nonunique},
          {"n_failed", r.n_failed},
          {"fraction_periodic", r.fraction_periodic},
          {"ci95", {r.ci.lo, r.ci.hi}},
          {"seed", r.seed}};
}

json to_json(const LockingSummary& s) {
  json iv = json::array();
  for (const auto& i : s.intervals)
    iv.push_back({{"rotation", fraction_json(i.rotation)},
                  {"orbit_word", i.orbit_word},
                  {"t_lo", i.t_lo},
                  {"t_hi", i.t_hi},
                  {"count", i.count}});
  return {{"intervals", iv}, {"gaps", s.gaps}, {"monotone", staircase_monotone(s.intervals)}};
}

}  // namespace ergolab
