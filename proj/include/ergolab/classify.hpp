#pragma once

#include <string>

#include "ergolab/orbits.hpp"
#include "ergolab/subaction.hpp"

namespace ergolab {

enum class MaximizerClass { Periodic, NonPeriodicSuspected, NonUnique };

std::string to_string(MaximizerClass c);

struct ClassifyOptions {
  SolverOptions solver{};
  // Negative: 1e-6 (1 + Lip f).
  double tol = -1.0;
  // Action-set slack; negative: tol + 10 residual (+ interpolation defect for nonlinear maps).
  double eps = -1.0;
  int n_forward = 20;
  // The Mather estimate must lie within max(tol, localization_cells / N) of the orbit.
  int localization_cells = 3;
};

struct Classification {
  MaximizerClass kind = MaximizerClass::NonUnique;
  std::size_t best_index = 0;
  PeriodicOrbit best_orbit;
  double best_average = 0.0;
  // best average minus runner-up average
  double margin = 0.0;
  // upper sandwich bound minus best average
  double gap = 0.0;
  BetaSandwich sandwich;
  double tol = 0.0;
  bool localized = false;
  double beta_solver = 0.0;
  std::string note;
};

Classification classify_maximizer(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                  const OrbitCatalog& catalog, const ClassifyOptions& options = {});

// Default classification tolerance 1e-6 (1 + Lip f).
double default_tolerance(const TrigPolynomial& f);
// Default action-set slack for a computed sub-action.
double default_action_slack(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g);

// Same, with the sub-action supplied by the caller.
Classification classify_with_subaction(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                       const OrbitCatalog& catalog, const SubActionField& g,
                                       const ClassifyOptions& options = {});

Classification classify_maximizer(const TrigPolynomial& f, const ExpandingCircleMap& map, int p_max,
                                  double tol = -1.0);

}  // namespace ergolab
