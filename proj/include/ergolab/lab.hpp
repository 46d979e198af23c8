#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ergolab/classify.hpp"
#include "ergolab/orbits.hpp"
#include "ergolab/performance.hpp"

namespace ergolab {

// Uniform double in [0, 1) from a SplitMix64 hash of (seed, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

struct SweepRecord {
  std::vector<double> t;
  std::string classification;  // MaximizerClass name or "failed"
  std::string orbit_word;
  Fraction rotation;
  double beta_lower = 0.0;
  double beta_upper = 0.0;
  double gap = 0.0;
  double wall_ms = 0.0;
  std::string note;
  bool periodic() const { return classification == "Periodic"; }
};

struct SweepOptions {
  ClassifyOptions classify{};
  unsigned threads = 0;
  // Per-record wall-clock limit in seconds; <= 0 disables it.
  double timeout = 0.0;
  bool record_timing = false;
};

SweepRecord classify_record(const TrigPolynomial& f, const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                            const SweepOptions& options);

std::vector<SweepRecord> sweep_family(const ScalarFamily& family, std::span<const double> t_grid,
                                      const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                                      const SweepOptions& options = {});

// The same for a linear family f0 + sum t_n phi_n with a t-vector per record.
std::vector<SweepRecord> sweep_family(const TrigPolynomial& f0, const PerturbationBasis& basis,
                                      const std::vector<std::vector<double>>& t_grid,
                                      const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                                      const SweepOptions& options = {});

std::vector<double> uniform_grid(std::size_t n, double lo = 0.0, double hi = 1.0);

struct LockingInterval {
  Fraction rotation;
  std::string orbit_word;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::size_t count = 0;
};

struct LockingSummary {
  std::vector<LockingInterval> intervals;
  // t values of records that were not Periodic.
  std::vector<double> gaps;
};

// Maximal runs of Periodic records with equal rotation number; records sorted by t[0].
LockingSummary locking_intervals(const std::vector<SweepRecord>& records);

// Rotation numbers nondecreasing along the intervals, allowing one wrap 1 -> 0 at the
// fixed-point plateau.
bool staircase_monotone(const std::vector<LockingInterval>& intervals);

// Bisection on the rotation number of the best orbit of family.at(t), p <= catalog.p_max().
// Requires rotation(lo) < target < rotation(hi).
double bisect_rotation(const ScalarFamily& family, const OrbitCatalog& catalog, double target, double lo,
                       double hi, int iterations = 60);

struct WilsonInterval {
  double lo = 0.0;
  double hi = 1.0;
};

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z = 1.959963984540054);

struct PrevalenceReport {
  std::size_t n_samples = 0;
  std::size_t n_periodic = 0;
  std::size_t n_suspected = 0;
  std::size_t n_nonunique = 0;
  std::size_t n_failed = 0;
  double fraction_periodic = 0.0;
  WilsonInterval ci;
  std::uint64_t seed = 0;
  std::vector<SweepRecord> records;
};

PrevalenceReport prevalence_mc(const TrigPolynomial& f0, const PerturbationBasis& basis, std::size_t n_samples,
                               std::uint64_t seed, const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                               const SweepOptions& options = {});

// CSV with a "# key=value" provenance line, then t,class,orbit_word,rot_num,beta_lo,beta_hi,gap,ms.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records, const std::string& header);

// Per-sample CSV: sample,class,orbit_word,rot_num,beta_lo,beta_hi,gap,t_1..t_n.
void write_prevalence_csv(std::ostream& out, const PrevalenceReport& report, const std::string& header);

std::string format_double(double v);

}  // namespace ergolab
