#include "ergolab/subaction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

constexpr std::size_t kHistory = 8;

double interpolate(const std::vector<double>& v, double x) {
  const auto n = static_cast<double>(v.size());
  const double c = wrap01(x) * n;
  const double fl = std::floor(c);
  const double w = c - fl;
  auto j = static_cast<std::size_t>(fl);
  if (j >= v.size()) j = 0;
  const std::size_t j1 = j + 1 == v.size() ? 0 : j + 1;
  return (1.0 - w) * v[j] + w * v[j1];
}

double second_derivative_bound(const TrigPolynomial& f) {
  double s = 0.0;
  const auto& a = f.cos_coeffs();
  const auto& b = f.sin_coeffs();
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double w = 2.0 * std::numbers::pi * static_cast<double>(k + 1);
    s += w * w * (std::abs(a[k]) + std::abs(b[k]));
  }
  return s;
}

// Cells within one cell width of position c (in grid units).
bool near_mask(const std::vector<char>& mask, double c) {
  const auto n = static_cast<long>(mask.size());
  const long lo = static_cast<long>(std::ceil(c - 1.5));
  const long hi = static_cast<long>(std::floor(c + 1.5));
  for (long j = lo; j <= hi; ++j) {
    long m = j % n;
    if (m < 0) m += n;
    if (mask[static_cast<std::size_t>(m)]) return true;
  }
  return false;
}

void finalize(SubActionField& out, const TrigPolynomial& f, const ExpandingCircleMap& map,
              const std::vector<double>& lg) {
  const int n = out.grid_size();
  const double h = out.spacing();
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, cal = 0.0;
  for (int k = 0; k < n; ++k) {
    const double r = lg[k] - out.values[k];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    cal = std::max(cal, std::abs(r - out.beta));
  }
  out.beta_lower_grid = lo;
  out.beta_upper_grid = hi;
  out.calibration_defect = cal;

  double sub = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = k * h;
    sub = std::max(sub, out.values[k] + f(x) - out(map.circle(x)) - out.beta);
  }
  out.subaction_defect = sub;
  out.residual = std::max(sub, cal);

  double lip = 0.0;
  for (int k = 0; k < n; ++k)
    lip = std::max(lip, std::abs(out.values[(k + 1) % n] - out.values[k]) * n);
  out.lipschitz = lip;
  const double lip_f = f.lipschitz_bound();
  out.lipschitz_ratio = lip_f > 0.0 ? lip / lip_f : 0.0;

  // Refined grid containing the kinks of g and of g o T when T is linear.
  const int fine = 4 * map.degree();
  const double hf = h / fine;
  double sup = 0.0;
  for (long j = 0; j < static_cast<long>(n) * fine; ++j) {
    const double x = j * hf;
    sup = std::max(sup, out(x) + f(x) - out(map.circle(x)) - out.beta);
  }
  const double slack = map.is_linear()
                           ? second_derivative_bound(f) * hf * hf / 8.0
                           : (lip * (1.0 + map.max_derivative()) + lip_f) * hf / 2.0;
  out.continuum_defect = sup + slack;
}

}  // namespace

double SubActionField::operator()(double x) const { return interpolate(values, x); }

LaxOperator::LaxOperator(const TrigPolynomial& f, const ExpandingCircleMap& map, int grid)
    : n_(grid), d_(map.degree()) {
  if (grid < 2 * d_ * std::max(1, f.harmonics()))
    throw std::invalid_argument("lax_step: grid of " + std::to_string(grid) +
                                " points is too coarse for the performance function");
  index_.resize(static_cast<std::size_t>(n_) * d_);
  weight_.resize(index_.size());
  fvalue_.resize(index_.size());
  for (int k = 0; k < n_; ++k) {
    const double x = static_cast<double>(k) / n_;
    for (int i = 0; i < d_; ++i) {
      const double y = wrap01(map.inverse_branch(i, x));
      const double c = y * n_;
      const double fl = std::floor(c);
      const std::size_t s = static_cast<std::size_t>(k) * d_ + i;
      index_[s] = static_cast<int>(fl) % n_;
      weight_[s] = c - fl;
      fvalue_[s] = f(y);
    }
  }
}

void LaxOperator::apply(std::span<const double> g, std::span<double> out) const {
  for (int k = 0; k < n_; ++k) {
    double best = -std::numeric_limits<double>::infinity();
    const std::size_t base = static_cast<std::size_t>(k) * d_;
    for (int i = 0; i < d_; ++i) {
      const std::size_t s = base + i;
      const int j = index_[s];
      const int j1 = j + 1 == n_ ? 0 : j + 1;
      const double v = (1.0 - weight_[s]) * g[j] + weight_[s] * g[j1] + fvalue_[s];
      best = std::max(best, v);
    }
    out[k] = best;
  }
}

LaxStep lax_step(const TrigPolynomial& f, const ExpandingCircleMap& map, std::span<const double> g) {
  LaxOperator op(f, map, static_cast<int>(g.size()));
  LaxStep step;
  step.values.resize(g.size());
  op.apply(g, step.values);
  step.shift = *std::max_element(step.values.begin(), step.values.end());
  for (double& v : step.values) v -= step.shift;
  return step;
}

SubActionField compute_subaction(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                 const SolverOptions& options) {
  const int n = options.grid;
  if (n < 2) throw std::invalid_argument("compute_subaction: grid too small");
  SubActionField out;
  out.values.assign(n, 0.0);
  if (f.is_constant()) {
    out.beta = f.constant();
    out.beta_lower_grid = out.beta_upper_grid = out.beta;
    out.degenerate = true;
    out.shift_history = {out.beta};
    return out;
  }

  const LaxOperator op(f, map, n);
  std::vector<double>& g = out.values;
  std::vector<double> lg(n);
  const double w = options.damping;
  double prev_shift = std::numeric_limits<double>::quiet_NaN();
  double diff = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_iter; ++it) {
    op.apply(g, lg);
    const double shift = *std::max_element(lg.begin(), lg.end());
    diff = 0.0;
    for (int k = 0; k < n; ++k) diff = std::max(diff, std::abs(lg[k] - shift - g[k]));
    out.shift_history.push_back(shift);
    if (out.shift_history.size() > kHistory) out.shift_history.erase(out.shift_history.begin());
    out.iterations = it;
    if (std::abs(shift - prev_shift) <= options.tol && diff <= options.tol) {
      out.beta = shift;
      finalize(out, f, map, lg);
      return out;
    }
    prev_shift = shift;
    double top = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      g[k] = (1.0 - w) * g[k] + w * (lg[k] - shift);
      top = std::max(top, g[k]);
    }
    for (double& v : g) v -= top;
    if (options.deadline && (it & 63) == 0 && std::chrono::steady_clock::now() > *options.deadline)
      throw NoConvergence("compute_subaction: deadline passed", diff, it);
  }
  throw NoConvergence("compute_subaction: no convergence after " + std::to_string(options.max_iter) +
                          " iterations",
                      diff, options.max_iter);
}

BetaSandwich beta_sandwich(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g,
                           std::span<const PeriodicOrbit> orbits) {
  BetaSandwich s;
  const int n = g.grid_size();
  double upper = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    upper = std::max(upper, f(x) + g.values[k] - g(map.circle(x)));
  }
  double lower = -std::numeric_limits<double>::infinity();
  for (const auto& o : orbits) {
    lower = std::max(lower, orbit_average(f, o));
    const std::size_t p = o.points.size();
    // Images taken from the orbit itself so the orbit terms telescope exactly.
    for (std::size_t k = 0; k < p; ++k)
      upper = std::max(upper, f(o.points[k]) + g(o.points[k]) - g(o.points[(k + 1) % p]));
  }
  s.lower = orbits.empty() ? g.beta_lower_grid : lower;
  s.upper = upper;
  s.interp_error = std::max(0.0, g.continuum_defect - g.subaction_defect);
  return s;
}

std::vector<double> defect_field(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                 const SubActionField& g) {
  const int n = g.grid_size();
  std::vector<double> d(n);
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    d[k] = g.values[k] + f(x) - g(map.circle(x)) - g.beta;
  }
  return d;
}

InvariantSetEstimate action_set(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                const SubActionField& g, double eps) {
  InvariantSetEstimate out;
  if (std::isinf(eps) && eps > 0) {
    out = InvariantSetEstimate::full_circle(g.spacing());
  } else {
    const auto d = defect_field(f, map, g);
    std::vector<char> mask(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) mask[k] = std::abs(d[k]) <= eps;
    out = InvariantSetEstimate::from_mask(mask);
  }
  out.epsilon = eps;
  return out;
}

MatherEstimate mather_set_estimate(const TrigPolynomial& f, const ExpandingCircleMap& map,
                                   const SubActionField& g, double eps, int n_forward) {
  const int n = g.grid_size();
  const int d = map.degree();
  std::vector<char> mask(n, 1);
  if (!(std::isinf(eps) && eps > 0)) {
    const auto defect = defect_field(f, map, g);
    for (int k = 0; k < n; ++k) mask[k] = std::abs(defect[k]) <= eps;
  }
  std::vector<double> image(n);
  std::vector<double> pre(static_cast<std::size_t>(n) * d);
  for (int k = 0; k < n; ++k) {
    const double x = static_cast<double>(k) / n;
    image[k] = map.circle(x) * n;
    for (int i = 0; i < d; ++i) pre[static_cast<std::size_t>(k) * d + i] = wrap01(map.inverse_branch(i, x)) * n;
  }

  int passes = 0;
  for (bool changed = true; changed;) {
    changed = false;
    ++passes;
    for (int k = 0; k < n; ++k) {
      if (mask[k] && !near_mask(mask, image[k])) {
        mask[k] = 0;
        changed = true;
      }
    }
  }
  if (std::none_of(mask.begin(), mask.end(), [](char c) { return c; }))
    throw EmptyEstimate("mather_set_estimate: pruning emptied the action set (eps " + std::to_string(eps) + ")");

  std::vector<char> cur = mask, next(n);
  for (int step = 0; step < n_forward; ++step) {
    for (int k = 0; k < n; ++k) {
      next[k] = 0;
      if (!mask[k]) continue;
      for (int i = 0; i < d && !next[k]; ++i) next[k] = near_mask(cur, pre[static_cast<std::size_t>(k) * d + i]);
    }
    cur.swap(next);
  }
  if (std::none_of(cur.begin(), cur.end(), [](char c) { return c; }))
    throw EmptyEstimate("mather_set_estimate: forward images emptied the estimate");

  MatherEstimate out;
  out.invariant = InvariantSetEstimate::from_mask(mask);
  out.invariant.epsilon = eps;
  out.invariant.generation = passes;
  out.mather = InvariantSetEstimate::from_mask(cur);
  out.mather.epsilon = eps;
  out.mather.generation = passes + n_forward;
  return out;
}

}  // namespace ergolab
