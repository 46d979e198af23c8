#include "ergolab/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergolab/errors.hpp"

namespace ergolab {

std::string to_string(MaximizerClass c) {
  switch (c) {
    case MaximizerClass::Periodic: return "Periodic";
    case MaximizerClass::NonPeriodicSuspected: return "NonPeriodicSuspected";
    case MaximizerClass::NonUnique: return "NonUnique";
  }
  return "?";
}

namespace {

bool localized_near(const InvariantSetEstimate& k, const PeriodicOrbit& orbit, double radius) {
  const auto hood = InvariantSetEstimate::from_points(orbit.points, radius);
  for (double x : k.samples(0.25 * radius))
    if (!hood.contains(x)) return false;
  return true;
}

}  // namespace

double default_tolerance(const TrigPolynomial& f) { return 1e-6 * (1.0 + f.lipschitz_bound()); }

double default_action_slack(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g) {
  // Calibrated grid points have defect near the solver residual; interpolation adds
  // its own error when preimages fall off the grid.
  return default_tolerance(f) + 10.0 * g.residual + (map.is_linear() ? 0.0 : g.continuum_defect);
}

Classification classify_with_subaction(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                       const OrbitCatalog& catalog, const SubActionField& g,
                                       const ClassifyOptions& options) {
  if (catalog.size() == 0) throw std::invalid_argument("classify_maximizer: empty orbit catalog");
  Classification c;
  c.tol = options.tol >= 0 ? options.tol : default_tolerance(f);
  const double eps = options.eps >= 0 ? options.eps : default_action_slack(f, map, g) - default_tolerance(f) + c.tol;

  const auto avg = catalog.averages(f);
  std::size_t best = 0;
  for (std::size_t i = 1; i < avg.size(); ++i)
    if (avg[i] > avg[best]) best = i;
  double second = -std::numeric_limits<double>::infinity();
  std::size_t second_index = best;
  for (std::size_t i = 0; i < avg.size(); ++i)
    if (i != best && avg[i] > second) {
      second = avg[i];
      second_index = i;
    }
  c.best_index = best;
  c.best_orbit = catalog.orbits()[best];
  c.best_average = avg[best];
  c.margin = avg.size() > 1 ? avg[best] - second : std::numeric_limits<double>::infinity();
  c.beta_solver = g.beta;

  // The leading orbits enter the upper bound too, so lower <= upper holds exactly.
  std::vector<PeriodicOrbit> lead{catalog.orbits()[best]};
  if (second_index != best) lead.push_back(catalog.orbits()[second_index]);
  c.sandwich = beta_sandwich(f, map, g, lead);
  c.gap = c.sandwich.upper - c.best_average;

  if (f.is_constant(c.tol) || g.degenerate) {
    c.kind = MaximizerClass::NonUnique;
    c.note = "performance function is constant within tolerance";
    return c;
  }
  const bool near_top = c.best_average >= c.sandwich.upper - c.tol;
  if (!near_top) {
    c.kind = MaximizerClass::NonPeriodicSuspected;
    c.note = "no orbit within tolerance of the upper bound";
    return c;
  }
  if (avg.size() > 1 && second >= c.sandwich.upper - c.tol) {
    c.kind = MaximizerClass::NonUnique;
    c.note = "orbits " + catalog.orbits()[best].word.str() + " and " +
             catalog.orbits()[second_index].word.str() + " tie within tolerance";
    return c;
  }
  const double radius = std::max(c.tol, options.localization_cells * g.spacing());
  try {
    const auto est = mather_set_estimate(f, map, g, eps, options.n_forward);
    c.localized = localized_near(est.mather, c.best_orbit, radius);
  } catch (const EmptyEstimate&) {
    c.localized = false;
  }
  if (c.localized) {
    c.kind = MaximizerClass::Periodic;
  } else {
    c.kind = MaximizerClass::NonPeriodicSuspected;
    c.note = "Mather estimate not localized at the best orbit";
  }
  return c;
}

Classification classify_maximizer(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                  const OrbitCatalog& catalog, const ClassifyOptions& options) {
  const auto g = compute_subaction(f, map, options.solver);
  return classify_with_subaction(f, map, catalog, g, options);
}

Classification classify_maximizer(const TrigPolynomial& f, const ExpandingCircleMap& map, int p_max,
                                  double tol) {
  const OrbitCatalog catalog(map, p_max);
  ClassifyOptions options;
  options.tol = tol;
  return classify_maximizer(f, map, catalog, options);
}

}  // namespace ergolab
