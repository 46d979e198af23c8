#include <cmath>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ergolab/config.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/lab.hpp"
#include "test_support.hpp"

using namespace ergolab;
using doctest::Approx;

namespace {

const ExpandingCircleMap kDoubling = ExpandingCircleMap::doubling();

LockingInterval interval(long num, long den) {
  LockingInterval li;
  li.rotation = Fraction{num, den};
  return li;
}

SweepRecord periodic_record(double t, long num, long den) {
  SweepRecord r;
  r.t = {t};
  r.classification = "Periodic";
  r.rotation = Fraction{num, den};
  r.orbit_word = std::to_string(num) + "/" + std::to_string(den);
  return r;
}

}  // namespace

TEST_CASE("counter generator") {
  CHECK(counter_uniform(7, 3) == counter_uniform(7, 3));
  std::set<double> seen;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double u = counter_uniform(42, k);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    seen.insert(u);
  }
  CHECK(seen.size() == 1000);
  CHECK(counter_uniform(1, 0) != counter_uniform(2, 0));
}

TEST_CASE("uniform grid") {
  const auto g = uniform_grid(4, 0.0, 1.0);
  CHECK(g == std::vector<double>{0.0, 0.25, 0.5, 0.75});
  CHECK(uniform_grid(1, 0.3, 0.4) == std::vector<double>{0.3});
  CHECK(uniform_grid(0).empty());
}

TEST_CASE("sweep over the translated cosine") {
  const auto family = ScalarFamily::translation(testing::cos2pi());
  const OrbitCatalog catalog(kDoubling, 8);
  const std::vector<double> ts{0.0, 0.25, 0.5};
  const auto recs = sweep_family(family, ts, kDoubling, catalog);
  REQUIRE(recs.size() == 3);
  for (const auto& r : recs) CHECK(r.periodic());
  CHECK(recs[0].orbit_word == "0");
  CHECK(recs[1].orbit_word == "0001");
  CHECK(recs[1].rotation == Fraction{1, 4});
  CHECK(recs[2].orbit_word == "01");
  CHECK(recs[0].wall_ms == 0.0);

  const std::vector<double> one{0.1};
  CHECK(sweep_family(family, one, kDoubling, catalog).size() == 1);
}

TEST_CASE("constant family is non-unique everywhere") {
  const auto family = ScalarFamily::linear(TrigPolynomial::constant_fn(1.0), TrigPolynomial());
  const OrbitCatalog catalog(kDoubling, 6);
  for (const auto& r : sweep_family(family, uniform_grid(4), kDoubling, catalog))
    CHECK(r.classification == "NonUnique");
}

TEST_CASE("scaling the family keeps the winners") {
  const OrbitCatalog catalog(kDoubling, 10);
  const auto base = ScalarFamily::translation(testing::cos2pi());
  const auto scaled = ScalarFamily::translation(3.0 * testing::cos2pi());
  const auto ts = uniform_grid(16);
  const auto a = sweep_family(base, ts, kDoubling, catalog);
  const auto b = sweep_family(scaled, ts, kDoubling, catalog);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(a[i].classification == b[i].classification);
    CHECK(a[i].orbit_word == b[i].orbit_word);
  }
}

TEST_CASE("locking intervals") {
  CHECK(locking_intervals({}).intervals.empty());
  std::vector<SweepRecord> recs{periodic_record(0.0, 0, 1), periodic_record(0.1, 0, 1), periodic_record(0.2, 1, 4)};
  SweepRecord miss;
  miss.t = {0.3};
  miss.classification = "NonPeriodicSuspected";
  recs.push_back(miss);
  recs.push_back(periodic_record(0.4, 1, 4));
  recs.push_back(periodic_record(0.5, 1, 2));
  const auto s = locking_intervals(recs);
  REQUIRE(s.intervals.size() == 4);
  CHECK(s.intervals[0].count == 2);
  CHECK(s.intervals[0].t_lo == 0.0);
  CHECK(s.intervals[0].t_hi == 0.1);
  CHECK(s.intervals[1].rotation == Fraction{1, 4});
  CHECK(s.intervals[2].rotation == Fraction{1, 4});
  CHECK(s.gaps == std::vector<double>{0.3});

  std::vector<SweepRecord> same{periodic_record(0.0, 0, 1), periodic_record(0.5, 0, 1)};
  CHECK(locking_intervals(same).intervals.size() == 1);
}

TEST_CASE("staircase monotonicity") {
  CHECK(staircase_monotone({}));
  CHECK(staircase_monotone({interval(0, 1), interval(1, 3), interval(1, 2)}));
  // one wrap through the fixed point, total span at most one turn
  CHECK(staircase_monotone({interval(1, 2), interval(2, 3), interval(0, 1), interval(1, 4)}));
  CHECK_FALSE(staircase_monotone({interval(1, 2), interval(1, 3)}));
  CHECK_FALSE(staircase_monotone({interval(1, 2), interval(0, 1), interval(1, 4), interval(0, 1)}));
  CHECK_FALSE(staircase_monotone({interval(1, 3), interval(2, 3), interval(0, 1), interval(1, 2)}));
  CHECK_FALSE(staircase_monotone({interval(2, 3), interval(1, 4)}));
}

TEST_CASE("bisection on the rotation number") {
  const auto family = ScalarFamily::translation(testing::cos2pi());
  const OrbitCatalog catalog(kDoubling, 12);
  const double t = bisect_rotation(family, catalog, 0.3, 0.2, 0.45, 40);
  CHECK(t > 0.2);
  CHECK(t < 0.45);
  CHECK_THROWS_AS(bisect_rotation(family, catalog, 0.3, 0.4, 0.45, 40), std::invalid_argument);
}

TEST_CASE("Wilson interval") {
  const double z = 1.959963984540054;
  const auto all = wilson_interval(200, 200);
  CHECK(all.lo == Approx(200.0 / (200.0 + z * z)).epsilon(1e-12));
  CHECK(all.hi == Approx(1.0));
  const auto none = wilson_interval(0, 50);
  CHECK(none.lo == Approx(0.0).scale(1.0));
  CHECK(none.hi == Approx(z * z / (50.0 + z * z)).epsilon(1e-12));
  const auto half = wilson_interval(50, 100);
  const double centre = (0.5 + z * z / 200.0) / (1.0 + z * z / 100.0);
  const double spread = z * std::sqrt(0.25 / 100.0 + z * z / 40000.0) / (1.0 + z * z / 100.0);
  CHECK(half.lo == Approx(centre - spread).epsilon(1e-12));
  CHECK(half.hi == Approx(centre + spread).epsilon(1e-12));
  const auto empty = wilson_interval(0, 0);
  CHECK(empty.lo == 0.0);
  CHECK(empty.hi == 1.0);
}

TEST_CASE("prevalence sampling") {
  const OrbitCatalog catalog(kDoubling, 8);
  const TrigPolynomial minus_cos(0.0, {-1.0}, {});
  const auto none = prevalence_mc(minus_cos, PerturbationBasis::make({}), 5, 1, kDoubling, catalog);
  CHECK(none.n_samples == 5);
  CHECK(none.n_periodic == 5);
  for (const auto& r : none.records) CHECK(r.orbit_word == "01");
  const auto zero = prevalence_mc(minus_cos, PerturbationBasis::make({}), 0, 1, kDoubling, catalog);
  CHECK(zero.n_samples == 0);
  CHECK(zero.records.empty());

  std::vector<TrigPolynomial> dirs;
  for (int n = 1; n <= 3; ++n) dirs.push_back(TrigPolynomial::cosine(n, std::exp(-n)));
  const auto basis = PerturbationBasis::make(dirs);
  const auto a = prevalence_mc(minus_cos, basis, 12, 9, kDoubling, catalog);
  const auto b = prevalence_mc(minus_cos, basis, 12, 9, kDoubling, catalog);
  const auto c = prevalence_mc(minus_cos, basis, 12, 10, kDoubling, catalog);
  std::ostringstream sa, sb;
  write_prevalence_csv(sa, a, "test");
  write_prevalence_csv(sb, b, "test");
  CHECK(sa.str() == sb.str());
  CHECK(a.records[0].t != c.records[0].t);
  CHECK(a.n_periodic + a.n_suspected + a.n_nonunique + a.n_failed == a.n_samples);
  for (const auto& r : a.records) {
    REQUIRE(r.t.size() == 3);
    for (double t : r.t) {
      CHECK(t >= 0.0);
      CHECK(t < 1.0);
    }
  }
}

TEST_CASE("CSV layout") {
  std::vector<SweepRecord> recs{periodic_record(0.25, 1, 4)};
  recs[0].orbit_word = "0001";
  recs[0].beta_lower = 0.5;
  recs[0].beta_upper = 0.5;
  std::ostringstream out;
  write_sweep_csv(out, recs, "demo");
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "# demo");
  std::getline(in, line);
  CHECK(line == "t,class,orbit_word,rot_num,beta_lo,beta_hi,gap,ms");
  std::getline(in, line);
  CHECK(line == "0.25,Periodic,0001,1/4,0.5,0.5,0,0");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("config parsing") {
  const auto map = map_from_json(json::parse(R"({"degree": 2, "sin": [0.1]})"));
  CHECK(map.lift(0.25) == Approx(0.6));
  CHECK(map_from_json(to_json(map)).lift(0.3) == map.lift(0.3));
  const auto f = poly_from_json(json::parse(R"({"const": 0.5, "cos": [1.0], "sin": [0, 2]})"));
  CHECK(f(0.0) == Approx(1.5));
  CHECK(poly_from_json(to_json(f))(0.37) == Approx(f(0.37)));
  CHECK_THROWS_AS(map_from_json(json::parse(R"({"degree": "two"})")), ConfigError);
  CHECK_THROWS_AS(poly_from_json(json::parse(R"({"cos": [1, "x"]})")), ConfigError);
  const auto fam = scalar_family_from_json(json::parse(R"({"base": {"cos": [1]}, "shift": true})"));
  CHECK(fam.at(0.5)(0.0) == Approx(-1.0));
  const auto basis = basis_from_json(json::parse(R"({"base": {"cos": [-1]}, "directions": [{"cos": [0.5]}]})"));
  CHECK(basis.directions.size() == 1);
  CHECK_THROWS_AS(load_json_file("/nonexistent/config.json"), ConfigError);
}
