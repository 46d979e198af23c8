#include "ergolab/lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string rotation_text(const Fraction& r) {
  return std::to_string(r.num) + "/" + std::to_string(r.den);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  const std::uint64_t z = mix64(seed + 0x9e3779b97f4a7c15ULL * (counter + 1));
  return static_cast<double>(mix64(z) >> 11) * 0x1.0p-53;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

SweepRecord classify_record(const TrigPolynomial& f, const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                            const SweepOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SweepRecord rec;
  ClassifyOptions co = options.classify;
  if (options.timeout > 0)
    co.solver.deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(options.timeout));
  try {
    const auto c = classify_maximizer(f, map, catalog, co);
    rec.classification = to_string(c.kind);
    rec.orbit_word = c.best_orbit.word.str();
    rec.rotation = c.best_orbit.rotation();
    rec.beta_lower = c.sandwich.lower;
    rec.beta_upper = c.sandwich.upper;
    rec.gap = c.gap;
    rec.note = c.note;
  } catch (const Error& e) {
    rec.classification = "failed";
    rec.note = e.what();
  }
  if (options.record_timing)
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::vector<SweepRecord> sweep_family(const ScalarFamily& family, std::span<const double> t_grid,
                                      const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                                      const SweepOptions& options) {
  std::vector<SweepRecord> out(t_grid.size());
  parallel_for(t_grid.size(), options.threads, [&](std::size_t i) {
    out[i] = classify_record(family.at(t_grid[i]), map, catalog, options);
    out[i].t = {t_grid[i]};
  });
  return out;
}

std::vector<SweepRecord> sweep_family(const TrigPolynomial& f0, const PerturbationBasis& basis,
                                      const std::vector<std::vector<double>>& t_grid,
                                      const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                                      const SweepOptions& options) {
  std::vector<SweepRecord> out(t_grid.size());
  parallel_for(t_grid.size(), options.threads, [&](std::size_t i) {
    SweepRecord rec;
    try {
      rec = classify_record(family_member(f0, basis, t_grid[i]), map, catalog, options);
    } catch (const std::exception& e) {
      rec.classification = "failed";
      rec.note = e.what();
    }
    rec.t = t_grid[i];
    out[i] = std::move(rec);
  });
  return out;
}

std::vector<double> uniform_grid(std::size_t n, double lo, double hi) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
  return t;
}

LockingSummary locking_intervals(const std::vector<SweepRecord>& records) {
  LockingSummary s;
  bool open = false;
  for (const auto& r : records) {
    const double t = r.t.empty() ? 0.0 : r.t[0];
    if (!r.periodic()) {
      s.gaps.push_back(t);
      open = false;
      continue;
    }
    if (open && s.intervals.back().rotation == r.rotation) {
      auto& iv = s.intervals.back();
      iv.t_hi = t;
      ++iv.count;
      if (iv.orbit_word != r.orbit_word) iv.orbit_word.clear();
      continue;
    }
    s.intervals.push_back({r.rotation, r.orbit_word, t, t, 1});
    open = true;
  }
  return s;
}

bool staircase_monotone(const std::vector<LockingInterval>& intervals) {
  if (intervals.empty()) return true;
  double offset = 0.0;
  int wraps = 0;
  double prev = intervals.front().rotation.value();
  const double first = prev;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    double v = intervals[i].rotation.value() + offset;
    if (v < prev) {
      // rotation 1 and 0 are the same fixed point, so only a drop to 0 can be a wrap
      if (++wraps > 1 || intervals[i].rotation.num != 0) return false;
      offset += 1.0;
      v += 1.0;
      if (v < prev) return false;
    }
    prev = v;
  }
  return prev - first <= 1.0;
}

double bisect_rotation(const ScalarFamily& family, const OrbitCatalog& catalog, double target, double lo,
                       double hi, int iterations) {
  auto rotation_at = [&](double t) {
    const auto avg = catalog.averages(family.at(t));
    const auto best = static_cast<std::size_t>(std::max_element(avg.begin(), avg.end()) - avg.begin());
    return catalog.orbits()[best].rotation_number();
  };
  if (!(rotation_at(lo) < target && rotation_at(hi) > target))
    throw std::invalid_argument("bisect_rotation: target rotation not bracketed");
  for (int it = 0; it < iterations && hi - lo > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (rotation_at(mid) < target) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

WilsonInterval wilson_interval(std::size_t successes, std::size_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double denom = 1.0 + z * z / nn;
  const double center = (p + z * z / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

PrevalenceReport prevalence_mc(const TrigPolynomial& f0, const PerturbationBasis& basis, std::size_t n_samples,
                               std::uint64_t seed, const ExpandingCircleMap& map, const OrbitCatalog& catalog,
                               const SweepOptions& options) {
  PrevalenceReport rep;
  rep.seed = seed;
  rep.n_samples = n_samples;
  const std::size_t m = basis.size();
  std::vector<std::vector<double>> ts(n_samples, std::vector<double>(m));
  for (std::size_t s = 0; s < n_samples; ++s)
    for (std::size_t k = 0; k < m; ++k) ts[s][k] = counter_uniform(seed, s * m + k);
  rep.records = sweep_family(f0, basis, ts, map, catalog, options);
  for (const auto& r : rep.records) {
    if (r.classification == "Periodic") ++rep.n_periodic;
    else if (r.classification == "NonPeriodicSuspected") ++rep.n_suspected;
    else if (r.classification == "NonUnique") ++rep.n_nonunique;
    else ++rep.n_failed;
  }
  rep.fraction_periodic = n_samples ? static_cast<double>(rep.n_periodic) / static_cast<double>(n_samples) : 0.0;
  rep.ci = wilson_interval(rep.n_periodic, n_samples);
  return rep;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& records, const std::string& header) {
  out << "# " << header << "\n";
  out << "t,class,orbit_word,rot_num,beta_lo,beta_hi,gap,ms\n";
  for (const auto& r : records) {
    std::string t;
    for (std::size_t i = 0; i < r.t.size(); ++i) t += (i ? ";" : "") + format_double(r.t[i]);
    out << t << ',' << r.classification << ',' << r.orbit_word << ',' << rotation_text(r.rotation) << ','
        << format_double(r.beta_lower) << ',' << format_double(r.beta_upper) << ',' << format_double(r.gap)
        << ',' << format_double(std::round(r.wall_ms * 1000.0) / 1000.0) << '\n';
  }
}

void write_prevalence_csv(std::ostream& out, const PrevalenceReport& report, const std::string& header) {
  out << "# " << header << "\n";
  out << "sample,class,orbit_word,rot_num,beta_lo,beta_hi,gap";
  const std::size_t m = report.records.empty() ? 0 : report.records[0].t.size();
  for (std::size_t k = 0; k < m; ++k) out << ",t_" << k + 1;
  out << '\n';
  for (std::size_t s = 0; s < report.records.size(); ++s) {
    const auto& r = report.records[s];
    out << s << ',' << r.classification << ',' << r.orbit_word << ',' << rotation_text(r.rotation) << ','
        << format_double(r.beta_lower) << ',' << format_double(r.beta_upper) << ',' << format_double(r.gap);
    for (double t : r.t) out << ',' << format_double(t);
    out << '\n';
  }
}

}  // namespace ergolab
