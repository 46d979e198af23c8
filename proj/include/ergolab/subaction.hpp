#pragma once

#include <chrono>
#include <optional>
#include <span>
#include <vector>

#include "ergolab/circle_map.hpp"
#include "ergolab/invariant_set.hpp"
#include "ergolab/orbits.hpp"
#include "ergolab/performance.hpp"

namespace ergolab {

struct SolverOptions {
  int grid = 4096;
  int max_iter = 200000;
  double tol = 1e-10;
  // Averaging weight of the damped update g <- (1 - w) g + w (Lg - shift).
  double damping = 0.5;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Grid sampled sub-action, linearly interpolated between x_k = k/N.
struct SubActionField {
  std::vector<double> values;
  double beta = 0.0;
  // min and max of Lg - g over the grid.
  double beta_lower_grid = 0.0;
  double beta_upper_grid = 0.0;
  // max over grid of (g + f - g o T - beta)^+
  double subaction_defect = 0.0;
  // max over grid of |Lg - g - beta|
  double calibration_defect = 0.0;
  double residual = 0.0;
  // Sub-action defect sup over a 4d-times refined grid plus interpolation slack.
  double continuum_defect = 0.0;
  double lipschitz = 0.0;
  // lipschitz / Lip(f); 0 when f is constant.
  double lipschitz_ratio = 0.0;
  int iterations = 0;
  std::vector<double> shift_history;
  // f is constant: every invariant measure maximizes.
  bool degenerate = false;

  int grid_size() const { return static_cast<int>(values.size()); }
  double spacing() const { return 1.0 / static_cast<double>(values.size()); }
  double operator()(double x) const;
};

// Precomputed preimage stencil of the Lax-Oleinik operator on an N-grid.
class LaxOperator {
 public:
  LaxOperator(const TrigPolynomial& f, const ExpandingCircleMap& map, int grid);

  int grid() const { return n_; }
  // out_k = max_i [g(tau_i x_k) + f(tau_i x_k)], unnormalized.
  void apply(std::span<const double> g, std::span<double> out) const;

 private:
  int n_;
  int d_;
  std::vector<int> index_;
  std::vector<double> weight_;
  std::vector<double> fvalue_;
};

struct LaxStep {
  std::vector<double> values;
  double shift = 0.0;
};

// One normalized step: g' = Lg - shift with shift = max Lg.
LaxStep lax_step(const TrigPolynomial& f, const ExpandingCircleMap& map, std::span<const double> g);

SubActionField compute_subaction(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                 const SolverOptions& options = {});

struct BetaSandwich {
  double lower = 0.0;
  double upper = 0.0;
  double interp_error = 0.0;
  double midpoint() const { return 0.5 * (lower + upper); }
  double gap() const { return upper - lower; }
};

BetaSandwich beta_sandwich(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g,
                           std::span<const PeriodicOrbit> orbits);

// g(x) + f(x) - g(T x) - beta at grid point k.
std::vector<double> defect_field(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                 const SubActionField& g);

InvariantSetEstimate action_set(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                const SubActionField& g, double eps);

struct MatherEstimate {
  InvariantSetEstimate invariant;  // forward-invariant part of the action set
  InvariantSetEstimate mather;     // after n_forward forward images
};

MatherEstimate mather_set_estimate(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                   const SubActionField& g, double eps, int n_forward);

}  // namespace ergolab
