#include "ergolab/hseries.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "ergolab/errors.hpp"

namespace ergolab {

CodingQuery CodingQuery::finite(SymbolWord word) {
  if (word.empty()) throw std::invalid_argument("CodingQuery: empty word");
  CodingQuery q;
  q.depth = static_cast<int>(word.size());
  q.prefix = std::move(word);
  return q;
}

CodingQuery CodingQuery::periodic(SymbolWord cycle, int depth, SymbolWord prefix) {
  if (cycle.empty()) throw std::invalid_argument("CodingQuery: empty cycle");
  if (depth < 1) throw std::invalid_argument("CodingQuery: depth must be >= 1");
  CodingQuery q;
  q.prefix = std::move(prefix);
  q.cycle = std::move(cycle);
  q.depth = depth;
  return q;
}

int CodingQuery::letter(std::size_t n) const {
  if (n < prefix.size()) return prefix[n];
  if (cycle.empty()) throw std::out_of_range("CodingQuery: finite word exhausted");
  return cycle[(n - prefix.size()) % cycle.size()];
}

SymbolWord CodingQuery::word() const {
  std::vector<int> out(depth);
  for (int n = 0; n < depth; ++n) out[n] = letter(n);
  return SymbolWord(std::move(out));
}

namespace {

double geometric_tail(const ExpandingCircleMap& map, int depth) {
  const double lambda = map.expansion().lambda_star;
  return std::pow(lambda, -depth) / (lambda - 1.0);
}

void check_letters(const ExpandingCircleMap& map, const CodingQuery& q) {
  if (q.depth < 1) throw std::invalid_argument("CodingQuery: depth must be >= 1");
  if (q.cycle.empty() && static_cast<int>(q.prefix.size()) < q.depth)
    throw std::invalid_argument("CodingQuery: depth exceeds word length");
  if (q.prefix.max_letter() >= map.degree() || q.cycle.max_letter() >= map.degree())
    throw std::out_of_range("CodingQuery: letter exceeds map degree");
}

}  // namespace

double derivative_tail_bound(const TrigPolynomial& f, const ExpandingCircleMap& map, int depth) {
  return f.lipschitz_bound() * geometric_tail(map, depth);
}

SeriesValue h_value(const TrigPolynomial& f, const ExpandingCircleMap& map, const CodingQuery& q, double x) {
  check_letters(map, q);
  x = wrap01(x);
  double a = x, b = 0.0, sum = 0.0;
  for (int n = 0; n < q.depth; ++n) {
    const int i = q.letter(n);
    a = map.inverse_branch(i, a);
    b = map.inverse_branch(i, b);
    sum += f(a) - f(b);
  }
  return {sum, f.lipschitz_bound() * x * geometric_tail(map, q.depth)};
}

SeriesValue h_derivative(const TrigPolynomial& f, const ExpandingCircleMap& map, const CodingQuery& q,
                         double x) {
  check_letters(map, q);
  x = wrap01(x);
  double a = x, slope = 1.0, sum = 0.0;
  for (int n = 0; n < q.depth; ++n) {
    a = map.inverse_branch(q.letter(n), a);
    slope /= map.derivative(a);
    sum += f.deriv(a) * slope;
  }
  return {sum, derivative_tail_bound(f, map, q.depth)};
}

std::vector<SymbolWord> codings_of(double x, const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                                   int depth, double delta, std::size_t max_words) {
  if (depth < 1) throw std::invalid_argument("codings_of: depth must be >= 1");
  if (delta < 0) delta = 2.0 * k.resolution();
  x = wrap01(x);
  if (!k.contains(x, delta)) throw NoCoding("codings_of: point " + std::to_string(x) + " is not in K");
  const int d = map.degree();
  std::vector<SymbolWord> out;
  std::vector<int> letters;
  std::vector<double> points{x};
  // Depth-first over branches; letters.back() is the branch being tried at that level.
  letters.push_back(-1);
  while (!letters.empty()) {
    const std::size_t level = letters.size() - 1;
    int& c = letters.back();
    ++c;
    if (c >= d) {
      letters.pop_back();
      points.pop_back();
      continue;
    }
    const double y = map.inverse_branch(c, points[level]);
    if (!k.contains(y, delta)) continue;
    if (static_cast<int>(level) + 1 == depth) {
      out.emplace_back(letters);
      if (out.size() > max_words) throw BudgetExceeded("codings_of: more than max_words codings");
      continue;
    }
    points.push_back(y);
    letters.push_back(-1);
  }
  if (out.empty()) throw NoCoding("codings_of: no branch of " + std::to_string(x) + " stays in K");
  return out;
}

HolonomyResult holonomy_check(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g,
                              double x, double y, const CodingQuery& q) {
  check_letters(map, q);
  x = wrap01(x);
  y = wrap01(y);
  const int depth = q.depth;
  std::vector<double> xs(depth + 1), ys(depth + 1);
  xs[0] = x;
  ys[0] = y;
  for (int n = 0; n < depth; ++n) {
    xs[n + 1] = map.inverse_branch(q.letter(n), xs[n]);
    ys[n + 1] = map.inverse_branch(q.letter(n), ys[n]);
  }
  double series = 0.0;
  for (int n = 1; n <= depth; ++n) series += f(ys[n]) - f(xs[n]);
  HolonomyResult r;
  r.residual = (g(y) - g(x)) - series;

  // Lower bound on the residual after n calibrated steps:
  //   Lip(g)|y_n - x_n| + Lip(f) sum_{k>n} |y_k - x_k| + n sup D - sum_{k<=n} D(x_k).
  const double lip_f = f.lipschitz_bound();
  std::vector<double> far(depth + 2, 0.0);
  for (int n = depth; n >= 0; --n) far[n] = far[n + 1] + (n + 1 <= depth ? std::abs(ys[n + 1] - xs[n + 1]) : 0.0);
  const double sup_defect = std::max(0.0, g.continuum_defect);
  double chain = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= depth; ++n) {
    if (n > 0) chain += g(xs[n]) + f(xs[n]) - g(xs[n - 1]) - g.beta;
    const double bound = g.lipschitz * std::abs(ys[n] - xs[n]) + lip_f * far[n] + n * sup_defect - chain;
    best = std::min(best, bound);
  }
  r.tolerance = std::max(0.0, best);
  return r;
}

}  // namespace ergolab
