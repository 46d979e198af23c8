#pragma once

#include <cstddef>
#include <vector>

#include "ergolab/circle_map.hpp"
#include "ergolab/invariant_set.hpp"
#include "ergolab/performance.hpp"
#include "ergolab/subaction.hpp"

namespace ergolab {

// Eventually periodic coding prefix + cycle^inf, truncated at depth.
struct CodingQuery {
  SymbolWord prefix;
  SymbolWord cycle;
  int depth = 1;

  static CodingQuery finite(SymbolWord word);
  static CodingQuery periodic(SymbolWord cycle, int depth, SymbolWord prefix = {});

  // Letter n (0-based) of the infinite coding.
  int letter(std::size_t n) const;
  // The first depth letters.
  SymbolWord word() const;
};

struct SeriesValue {
  double value = 0.0;
  double tail = 0.0;
};

// sum_{n <= depth} f(tau_{w,n} x) - f(tau_{w,n} 0), x reduced to [0, 1).
SeriesValue h_value(const TrigPolynomial& f, const ExpandingCircleMap& map, const CodingQuery& q, double x);

// sum_{n <= depth} f'(tau_{w,n} x) tau'_{w,n}(x).
SeriesValue h_derivative(const TrigPolynomial& f, const ExpandingCircleMap& map, const CodingQuery& q,
                         double x);

// ||f'|| sum_{n > depth} lambda^-n
double derivative_tail_bound(const TrigPolynomial& f, const ExpandingCircleMap& map, int depth);

// Words of length depth whose partial branch images of x all stay within delta of K.
// delta < 0 means 2 * K.resolution(). Throws NoCoding when none survive.
std::vector<SymbolWord> codings_of(double x, const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                                   int depth, double delta = -1.0, std::size_t max_words = 1 << 20);

struct HolonomyResult {
  // [g(y) - g(x)] - [h_w(y) - h_w(x)]
  double residual = 0.0;
  // residual >= -tolerance when w codes x through calibrating preimages.
  double tolerance = 0.0;
};

HolonomyResult holonomy_check(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g,
                              double x, double y, const CodingQuery& q);

}  // namespace ergolab
