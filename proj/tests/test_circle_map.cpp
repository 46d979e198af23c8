#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "ergolab/circle_map.hpp"
#include "ergolab/errors.hpp"
#include "test_support.hpp"

using namespace ergolab;
using doctest::Approx;

namespace {
const ExpandingCircleMap kDoubling = ExpandingCircleMap::doubling();
const ExpandingCircleMap kWobble(2, {0.1}, {});  // 2x + 0.1 sin 2 pi x
}  // namespace

TEST_CASE("symbol words") {
  const auto w = SymbolWord::parse("0110");
  CHECK(w.size() == 4);
  CHECK(w.str() == "0110");
  CHECK(w.is_primitive());
  CHECK_FALSE(SymbolWord::parse("0101").is_primitive());
  CHECK_FALSE(SymbolWord::parse("000").is_primitive());
  CHECK(SymbolWord::parse("1").is_primitive());
  CHECK(SymbolWord::parse("1001").min_rotation().str() == "0011");
  CHECK(SymbolWord::parse("01").concat(SymbolWord::parse("1")).str() == "011");
  CHECK_THROWS_AS(SymbolWord::parse("01a"), std::invalid_argument);
}

TEST_CASE("lift evaluation") {
  CHECK(kDoubling.lift(0.5) == 1.0);
  CHECK(kDoubling.lift(0.0) == 0.0);
  CHECK(kWobble.lift(0.25) == Approx(0.6).epsilon(1e-15));
  CHECK(kWobble.lift(0.0) == 0.0);
  const ExpandingCircleMap cosine(2, {}, {0.05});
  CHECK(cosine.lift(0.0) == 0.0);
}

TEST_CASE("inverse branches") {
  CHECK(kDoubling.inverse_branch(0, 0.5) == 0.25);
  CHECK(kDoubling.inverse_branch(1, 0.5) == 0.75);
  CHECK(std::abs(kWobble.inverse_branch(0, 0.0)) <= 1e-15);
  CHECK_THROWS_AS(kDoubling.inverse_branch(2, 0.5), std::out_of_range);
  CHECK_THROWS_AS(kDoubling.inverse_branch(-1, 0.5), std::out_of_range);
}

TEST_CASE("branch composition applies the first letter first") {
  CHECK(kDoubling.branch_composition(SymbolWord::parse("00"), 1.0) == 0.25);
  CHECK(kDoubling.branch_composition(SymbolWord::parse("10"), 0.0) == 0.25);
  CHECK(kDoubling.branch_composition(SymbolWord::parse("01"), 0.0) == 0.5);
  CHECK_THROWS_AS(kDoubling.branch_composition(SymbolWord(), 0.0), std::invalid_argument);
}

TEST_CASE("branch derivatives") {
  CHECK(kDoubling.branch_derivative(SymbolWord::parse("00"), 0.3) == 0.25);
  CHECK(kDoubling.branch_derivative(SymbolWord::parse("1"), 0.7) == 0.5);
  // 1 / T'(0) with T'(0) = 2 + 0.2 pi
  CHECK(kWobble.branch_derivative(SymbolWord::parse("0"), 0.0) ==
        Approx(1.0 / (2.0 + 0.2 * std::numbers::pi)).epsilon(1e-12));
  CHECK(kWobble.branch_derivative(SymbolWord::parse("0"), 0.0) == Approx(0.380471).epsilon(1e-6));
}

TEST_CASE("expansion constants") {
  const auto e2 = expansion_constants(kDoubling, 1 << 14);
  CHECK(e2.c_star == 1.0);
  CHECK(e2.lambda_star == 2.0);
  // minimum of 2 + 0.2 pi cos 2 pi x is 2 - 0.2 pi at x = 1/2, a grid point
  const auto ew = kWobble.expansion();
  CHECK(ew.c_star == 1.0);
  CHECK(ew.lambda_star == Approx(2.0 - 0.2 * std::numbers::pi - 1e-9).epsilon(1e-12));
  CHECK(ew.lambda_star == Approx(1.37168).epsilon(1e-5));
  const ExpandingCircleMap triple(3);
  CHECK(triple.expansion().lambda_star == 3.0);
  CHECK_THROWS_AS(ExpandingCircleMap(2, {0.2}, {}), NotExpanding);
  CHECK_THROWS_AS(ExpandingCircleMap(1), std::invalid_argument);
}

TEST_CASE("lift normalization and degree on random maps") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto map = testing::random_map(rng, 2 + trial % 2, 1 + trial % 3);
    CHECK(map.lift(0.0) == 0.0);
    for (int s = 0; s < 20; ++s) {
      const double x = u(rng);
      CHECK(std::abs(map.lift(x + 1.0) - map.lift(x) - map.degree()) <= 1e-12);
      CHECK(map.derivative(x) >= map.expansion().lambda_star - 1e-6);
    }
  }
}

TEST_CASE("inverse branch residual on 10^4 random queries") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ExpandingCircleMap maps[] = {kWobble, testing::random_map(rng, 2, 3), testing::random_map(rng, 3, 2)};
  int bad = 0;
  for (int q = 0; q < 10000; ++q) {
    const auto& map = maps[q % 3];
    const int i = static_cast<int>(u(rng) * map.degree());
    const double y = u(rng);
    const double x = map.inverse_branch(i, y);
    if (std::abs(map.lift(x) - y - i) > 1e-12) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("branch derivative bounds and composition of words") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto map = trial % 2 ? kWobble : testing::random_map(rng, 3, 2);
    const int d = map.degree();
    auto word = [&](int n) {
      std::vector<int> l(n);
      for (int& c : l) c = static_cast<int>(u(rng) * d);
      return SymbolWord(l);
    };
    const auto w = word(1 + trial % 12);
    const auto w2 = word(1 + (trial * 7) % 12);
    const double x = u(rng);
    const double der = map.branch_derivative(w, x);
    CHECK(der > 0.0);
    CHECK(der <= std::pow(map.expansion().lambda_star, -static_cast<double>(w.size())) * (1 + 1e-12));
    const double joint = map.branch_composition(w.concat(w2), x);
    const double staged = map.branch_composition(w2, map.branch_composition(w, x));
    CHECK(joint == Approx(staged).epsilon(1e-14));
  }
}

TEST_CASE("lift inverse covers the whole line") {
  for (double y : {-2.7, -0.1, 0.0, 0.4, 1.9, 5.25}) {
    CHECK(kWobble.lift(kWobble.lift_inverse(y)) == Approx(y).epsilon(1e-13));
    CHECK(kDoubling.lift_inverse(y) == y / 2.0);
  }
}

TEST_CASE("circle helpers") {
  CHECK(wrap01(-0.25) == 0.75);
  CHECK(wrap01(1.0) == 0.0);
  CHECK(circle_distance(0.95, 0.05) == Approx(0.1));
  CHECK(circle_offset(0.95, 0.05) == Approx(0.1));
  CHECK(circle_offset(0.05, 0.95) == Approx(-0.1));
}
