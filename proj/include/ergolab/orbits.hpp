#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ergolab/circle_map.hpp"
#include "ergolab/performance.hpp"

namespace ergolab {

struct Fraction {
  long num = 0;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  auto operator<=>(const Fraction& o) const { return num * o.den <=> o.num * den; }
  bool operator==(const Fraction& o) const { return num * o.den == o.num * den; }
};

// points[k+1] = T(points[k]); word is the coding of points[0], a Lyndon word.
struct PeriodicOrbit {
  SymbolWord word;
  std::vector<double> points;

  std::size_t period() const { return points.size(); }
  // Share of nonzero letters, reduced. The degree-2 rotation number.
  Fraction rotation() const;
  double rotation_number() const { return rotation().value(); }
  // Letter frequencies over {0, ..., d-1}.
  std::vector<double> symbol_frequencies(int degree) const;
  // Backward coding of points[k]: the cycle of letters i with
  // tau_i(points[k]) = points[k-1].
  SymbolWord coding_of_point(std::size_t k) const {
    return word.rotated((word.size() - k % word.size()) % word.size());
  }
};

// Lyndon words of length <= max_length over d letters, in lexicographic order.
std::vector<SymbolWord> lyndon_words(int degree, int max_length);

// One orbit per primitive necklace of length <= p_max. Throws BudgetExceeded
// when d^p_max exceeds the budget.
std::vector<PeriodicOrbit> enumerate_orbits(const ExpandingCircleMap& map, int p_max,
                                            std::uint64_t budget = std::uint64_t{1} << 24);

// Periodic orbit coded by a primitive word (any rotation), points in forward order
// starting with the point coded by `word` itself.
PeriodicOrbit orbit_of_word(const ExpandingCircleMap& map, const SymbolWord& word);

double orbit_average(const TrigPolynomial& f, const PeriodicOrbit& orbit);

TrigPolynomial locking_perturbation(const PeriodicOrbit& orbit);

// Enumerated orbits plus a flat point table for fast averaging. Immutable.
class OrbitCatalog {
 public:
  OrbitCatalog() = default;
  OrbitCatalog(const ExpandingCircleMap& map, int p_max);
  explicit OrbitCatalog(std::vector<PeriodicOrbit> orbits, int p_max = 0);

  const std::vector<PeriodicOrbit>& orbits() const { return orbits_; }
  std::size_t size() const { return orbits_.size(); }
  int p_max() const { return p_max_; }
  std::vector<double> averages(const TrigPolynomial& f) const;

 private:
  std::vector<PeriodicOrbit> orbits_;
  std::vector<double> points_;
  std::vector<std::size_t> offsets_;
  int p_max_ = 0;
};

}  // namespace ergolab
