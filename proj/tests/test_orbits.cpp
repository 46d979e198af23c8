#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "ergolab/errors.hpp"
#include "ergolab/orbits.hpp"
#include "test_support.hpp"

using namespace ergolab;
using doctest::Approx;

namespace {

int mobius(int n) {
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    result = -result;
  }
  return n > 1 ? -result : result;
}

// Primitive necklaces of length n over d letters.
long necklaces(int d, int n) {
  long total = 0;
  for (int k = 1; k <= n; ++k)
    if (n % k == 0) total += mobius(n / k) * std::lround(std::pow(d, k));
  return total / n;
}

// Doubling orbit of k/(2^p - 1) as a sorted point set, empty if its minimal period is not p.
std::vector<long> doubling_cycle(long k, int p) {
  const long m = (1L << p) - 1;
  std::vector<long> pts;
  long x = k;
  for (int i = 0; i < p; ++i) {
    pts.push_back(x);
    x = (2 * x) % m;
  }
  std::sort(pts.begin(), pts.end());
  if (std::adjacent_find(pts.begin(), pts.end()) != pts.end()) return {};
  return pts;
}

}  // namespace

TEST_CASE("Lyndon word counts match the necklace formula") {
  for (int d : {2, 3})
    for (int n = 1; n <= 8; ++n) {
      long count = 0;
      for (const auto& w : lyndon_words(d, n))
        if (static_cast<int>(w.size()) == n) ++count;
      CHECK(count == necklaces(d, n));
    }
  for (const auto& w : lyndon_words(2, 10)) {
    CHECK(w.is_primitive());
    CHECK(w.min_rotation() == w);
  }
}

TEST_CASE("small doubling catalogs") {
  const auto map = ExpandingCircleMap::doubling();
  const auto one = enumerate_orbits(map, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].points[0] == 0.0);
  const auto two = enumerate_orbits(map, 2);
  REQUIRE(two.size() == 2);
  // tau_1 tau_0 fixes 2/3
  CHECK(two[1].word.str() == "01");
  CHECK(two[1].points[0] == Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(two[1].points[1] == Approx(1.0 / 3.0).epsilon(1e-15));
  const auto three = enumerate_orbits(map, 3);
  REQUIRE(three.size() == 4);
  std::vector<std::string> words;
  for (const auto& o : three) words.push_back(o.word.str());
  CHECK(words == std::vector<std::string>{"0", "001", "01", "011"});
  std::set<long> sevenths;
  for (std::size_t i : {1, 3})
    for (double x : three[i].points) sevenths.insert(std::lround(x * 7));
  CHECK(sevenths == std::set<long>{1, 2, 3, 4, 5, 6});
  CHECK(three[1].rotation() == Fraction{1, 3});
  CHECK(three[3].rotation() == Fraction{2, 3});
}

TEST_CASE("doubling orbits agree with the rational oracle") {
  const auto map = ExpandingCircleMap::doubling();
  const int p_max = 10;
  const auto orbits = enumerate_orbits(map, p_max);
  long expected = 0;
  for (int n = 1; n <= p_max; ++n) expected += necklaces(2, n);
  CHECK(static_cast<long>(orbits.size()) == expected - 1);  // 0 and 1 code the same fixed point
  std::set<std::vector<long>> oracle;
  for (int p = 1; p <= p_max; ++p)
    for (long k = 0; k < (1L << p) - 1; ++k) {
      auto cyc = doubling_cycle(k, p);
      if (!cyc.empty()) oracle.insert(cyc);
    }
  CHECK(oracle.size() == orbits.size());
  std::size_t matched = 0;
  for (const auto& o : orbits) {
    const int p = static_cast<int>(o.period());
    const long m = (1L << p) - 1;
    std::vector<long> cyc;
    bool on_grid = true;
    for (double x : o.points) {
      const double scaled = x * m;
      on_grid = on_grid && std::abs(scaled - std::round(scaled)) < 1e-6;
      cyc.push_back(std::lround(scaled) % m);
    }
    std::sort(cyc.begin(), cyc.end());
    if (on_grid && oracle.count(cyc)) ++matched;
  }
  CHECK(matched == orbits.size());
}

TEST_CASE("orbit points are periodic under perturbed maps") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 6; ++trial) {
    const auto map = trial == 0 ? ExpandingCircleMap(2, {0.1}, {}) : testing::random_map(rng, 2 + trial % 2, 2);
    for (const auto& o : enumerate_orbits(map, trial % 2 ? 5 : 8)) {
      const std::size_t p = o.period();
      for (std::size_t k = 0; k < p; ++k) {
        CHECK(circle_distance(map.circle(o.points[k]), o.points[(k + 1) % p]) <= 1e-10);
        double x = o.points[k];
        for (std::size_t j = 0; j < p; ++j) x = map.circle(x);
        CHECK(circle_distance(x, o.points[k]) <= 1e-9);
        // the backward coding pulls points[k] back to points[k-1]
        const auto code = o.coding_of_point(k);
        CHECK(circle_distance(map.inverse_branch(code[0], o.points[k]), o.points[(k + p - 1) % p]) <= 1e-10);
      }
    }
  }
}

TEST_CASE("orbit of word") {
  const auto map = ExpandingCircleMap::doubling();
  const auto o = orbit_of_word(map, SymbolWord::parse("10"));
  CHECK(o.period() == 2);
  CHECK(o.points[0] == Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(orbit_of_word(map, SymbolWord::parse("1010")), std::invalid_argument);
  const auto q = orbit_of_word(map, SymbolWord::parse("0001"));
  std::vector<long> fifteenths;
  for (double x : q.points) fifteenths.push_back(std::lround(x * 15));
  std::sort(fifteenths.begin(), fifteenths.end());
  CHECK(fifteenths == std::vector<long>{1, 2, 4, 8});
  CHECK(q.rotation() == Fraction{1, 4});
}

TEST_CASE("orbit averages") {
  const auto map = ExpandingCircleMap::doubling();
  const auto orbits = enumerate_orbits(map, 3);
  const auto f = testing::cos2pi();
  CHECK(orbit_average(f, orbits[0]) == Approx(1.0));
  // cos(2pi/7) + cos(4pi/7) + cos(8pi/7) = -1/2
  CHECK(orbit_average(f, orbits[1]) == Approx(-0.5 / 3.0));
  CHECK(orbit_average(f, orbits[2]) == Approx(-0.5));
  const OrbitCatalog catalog(orbits, 3);
  const auto avg = catalog.averages(f);
  for (std::size_t i = 0; i < orbits.size(); ++i) CHECK(avg[i] == Approx(orbit_average(f, orbits[i])).epsilon(1e-14));
}

TEST_CASE("enumeration budget") {
  const auto map = ExpandingCircleMap::doubling();
  CHECK_THROWS_AS(enumerate_orbits(map, 30), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_orbits(map, 10, 100), BudgetExceeded);
  CHECK_THROWS_AS(enumerate_orbits(map, 0), std::invalid_argument);
}

TEST_CASE("symbol frequencies of the degree three map") {
  const ExpandingCircleMap triple(3);
  const auto orbits = enumerate_orbits(triple, 2);
  // 0, 1, 2 fixed points minus the duplicate 2 ~ 0; then 01, 02, 12
  CHECK(orbits.size() == 5);
  for (const auto& o : orbits) {
    const auto freq = o.symbol_frequencies(3);
    CHECK(std::accumulate(freq.begin(), freq.end(), 0.0) == Approx(1.0));
  }
}
