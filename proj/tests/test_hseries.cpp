#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ergolab/errors.hpp"
#include "ergolab/hseries.hpp"
#include "ergolab/subaction.hpp"
#include "test_support.hpp"

using namespace ergolab;
using doctest::Approx;

namespace {

const ExpandingCircleMap kDoubling = ExpandingCircleMap::doubling();

TrigPolynomial minus_cos() { return TrigPolynomial(0.0, {-1.0}, {}); }

SubActionField solve(const TrigPolynomial& f, int n) {
  SolverOptions o;
  o.grid = n;
  return compute_subaction(f, kDoubling, o);
}

// For cos 2 pi x under doubling with the all-zero coding, tau_{0^n} x = x / 2^n.
double zero_coding_value(double x, int terms) {
  double s = 0.0;
  for (int n = 1; n <= terms; ++n) s += std::cos(2 * std::numbers::pi * x / std::ldexp(1.0, n)) - 1.0;
  return s;
}

double zero_coding_slope(double x, int terms) {
  double s = 0.0;
  for (int n = 1; n <= terms; ++n) {
    const double scale = std::ldexp(1.0, -n);
    s -= 2 * std::numbers::pi * scale * std::sin(2 * std::numbers::pi * x * scale);
  }
  return s;
}

}  // namespace

TEST_CASE("coding queries") {
  const auto q = CodingQuery::periodic(SymbolWord::parse("10"), 5, SymbolWord::parse("0"));
  CHECK(q.word().str() == "01010");
  CHECK(q.letter(7) == 1);
  const auto fq = CodingQuery::finite(SymbolWord::parse("011"));
  CHECK(fq.depth == 3);
  CHECK_THROWS_AS(fq.letter(3), std::out_of_range);
  CHECK_THROWS_AS(CodingQuery::periodic(SymbolWord(), 4), std::invalid_argument);
}

TEST_CASE("series values") {
  const auto zeros = CodingQuery::periodic(SymbolWord::parse("0"), 40);
  CHECK(h_value(TrigPolynomial::constant_fn(3.0), kDoubling, zeros, 0.7).value == 0.0);
  CHECK(h_value(testing::cos2pi(), kDoubling, zeros, 0.0).value == 0.0);
  const auto v = h_value(testing::cos2pi(), kDoubling, zeros, 0.5);
  CHECK(v.value == Approx(zero_coding_value(0.5, 40)).epsilon(1e-13));
  CHECK(v.value == Approx(-1.3946).epsilon(1e-4));
  CHECK(std::abs(zero_coding_value(0.5, 80) - v.value) <= v.tail);
  CHECK_THROWS_AS(h_value(testing::cos2pi(), kDoubling, CodingQuery::periodic(SymbolWord::parse("2"), 3), 0.1),
                  std::out_of_range);
}

TEST_CASE("series derivative") {
  const auto zeros = CodingQuery::periodic(SymbolWord::parse("0"), 40);
  CHECK(h_derivative(testing::cos2pi(), kDoubling, zeros, 0.0).value == 0.0);
  CHECK(h_derivative(TrigPolynomial::constant_fn(1.0), kDoubling, zeros, 0.3).value == 0.0);
  const auto d = h_derivative(testing::cos2pi(), kDoubling, zeros, 0.5);
  CHECK(d.value == Approx(zero_coding_slope(0.5, 40)).epsilon(1e-13));
  CHECK(d.value == Approx(-4.655).epsilon(1e-3));
  CHECK(std::abs(zero_coding_slope(0.5, 80) - d.value) <= d.tail);
}

TEST_CASE("tails bound the truncation error") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const auto map = trial % 2 ? kDoubling : testing::random_map(rng, 2, 2);
    const auto f = testing::random_poly(rng, 1 + trial % 4);
    std::vector<int> cyc(1 + trial % 5);
    for (int& c : cyc) c = static_cast<int>(u(rng) * 2);
    const double x = u(rng);
    const auto shallow = CodingQuery::periodic(SymbolWord(cyc), 12);
    const auto deep = CodingQuery::periodic(SymbolWord(cyc), 60);
    const auto a = h_value(f, map, shallow, x);
    CHECK(std::abs(h_value(f, map, deep, x).value - a.value) <= a.tail * (1 + 1e-9) + 1e-14);
    const auto b = h_derivative(f, map, shallow, x);
    CHECK(std::abs(h_derivative(f, map, deep, x).value - b.value) <= b.tail * (1 + 1e-9) + 1e-14);
  }
}

TEST_CASE("derivative matches centered differences of the value") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  for (int trial = 0; trial < 30; ++trial) {
    const auto map = trial % 2 ? kDoubling : testing::random_map(rng, 3, 2);
    const auto f = testing::random_poly(rng, 1 + trial % 3);
    const auto q = CodingQuery::periodic(SymbolWord(std::vector<int>{trial % 2, 1}), 40);
    const double x = u(rng), h = 1e-6;
    const double fd = (h_value(f, map, q, x + h).value - h_value(f, map, q, x - h).value) / (2 * h);
    CHECK(fd == Approx(h_derivative(f, map, q, x).value).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("codings through an invariant set") {
  const std::vector<double> zero{0.0};
  const auto k0 = InvariantSetEstimate::from_points(zero, 1e-9);
  const auto w0 = codings_of(0.0, k0, kDoubling, 12, 1e-9);
  REQUIRE(w0.size() == 1);
  CHECK(w0[0].str() == "000000000000");

  const std::vector<double> pair{1.0 / 3.0, 2.0 / 3.0};
  const auto k2 = InvariantSetEstimate::from_points(pair, 1e-9);
  const auto w2 = codings_of(1.0 / 3.0, k2, kDoubling, 10, 1e-9);
  REQUIRE(w2.size() == 1);
  CHECK(w2[0].str() == "1010101010");

  CHECK(codings_of(0.3, InvariantSetEstimate::full_circle(), kDoubling, 8).size() == 256);
  CHECK_THROWS_AS(codings_of(0.5, k0, kDoubling, 4, 1e-9), NoCoding);
  CHECK_THROWS_AS(codings_of(0.3, InvariantSetEstimate::full_circle(), kDoubling, 8, 0.0, 100), BudgetExceeded);
}

TEST_CASE("holonomy at the maximizing orbit") {
  const auto f = minus_cos();
  const auto g = solve(f, 4096);
  const auto q = CodingQuery::periodic(SymbolWord::parse("10"), 40);
  const auto same = holonomy_check(f, kDoubling, g, 1.0 / 3.0, 1.0 / 3.0, q);
  CHECK(same.residual == 0.0);

  const auto other = holonomy_check(f, kDoubling, g, 1.0 / 3.0, 2.0 / 3.0, q);
  CHECK(other.residual >= -other.tolerance);

  const auto m = mather_set_estimate(f, kDoubling, g, 1e-3, 20).mather;
  int probes = 0;
  for (const auto& arc : m.arcs()) {
    if (!(circle_distance(arc.start, 1.0 / 3.0) < 0.01)) continue;
    for (double y : {arc.start, arc.start + 0.5 * arc.length, arc.end()}) {
      CHECK(std::abs(holonomy_check(f, kDoubling, g, 1.0 / 3.0, y, q).residual) <= 1e-4);
      ++probes;
    }
  }
  CHECK(probes > 0);
}

TEST_CASE("holonomy inequality for random comparison points") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  struct Case {
    TrigPolynomial f;
    double x;
    const char* cycle;
  };
  const Case cases[] = {{minus_cos(), 1.0 / 3.0, "10"}, {minus_cos(), 2.0 / 3.0, "01"}, {testing::cos2pi(), 0.0, "0"}};
  int violations = 0;
  for (const auto& c : cases) {
    const auto g = solve(c.f, 4096);
    const auto q = CodingQuery::periodic(SymbolWord::parse(c.cycle), 40);
    for (int s = 0; s < 1000; ++s) {
      const auto r = holonomy_check(c.f, kDoubling, g, c.x, u(rng), q);
      if (r.residual < -r.tolerance) ++violations;
    }
  }
  CHECK(violations == 0);
}
