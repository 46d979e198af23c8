// ergolab: command line driver for the ergodic optimization laboratory.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "ergolab/classify.hpp"
#include "ergolab/config.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/hseries.hpp"
#include "ergolab/lab.hpp"
#include "ergolab/orbits.hpp"
#include "ergolab/structure.hpp"
#include "ergolab/subaction.hpp"

using namespace ergolab;

namespace {

struct Globals {
  std::string map_file;
  std::string config_file;
  std::string out_file;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  json config = json::object();
};

// Command line value if given, else config key, else fallback.
template <class T>
T pick(const CLI::Option* opt, const T& flag_value, const json& cfg, const char* key, const T& fallback) {
  if (opt && opt->count()) return flag_value;
  if (cfg.contains(key)) return cfg.at(key).get<T>();
  return fallback;
}

ExpandingCircleMap load_map(const Globals& g) {
  if (!g.map_file.empty()) return map_from_json(load_json_file(g.map_file));
  if (g.config.contains("map")) return map_from_json(g.config.at("map"));
  return ExpandingCircleMap::doubling();
}

TrigPolynomial load_f(const Globals& g, const std::string& file) {
  if (!file.empty()) return poly_from_json(load_json_file(file));
  if (g.config.contains("f")) return poly_from_json(g.config.at("f"));
  throw ConfigError("no performance function: pass --f or put \"f\" in the config");
}

json load_family(const Globals& g, const std::string& file) {
  if (!file.empty()) return load_json_file(file);
  if (g.config.contains("family")) return g.config.at("family");
  throw ConfigError("no family: pass --family or put \"family\" in the config");
}

void emit(const Globals& g, const std::string& text) {
  if (g.out_file.empty() || g.out_file == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_file, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + g.out_file);
  out << text;
}

void emit_json(const Globals& g, const json& j) { emit(g, j.dump(2) + "\n"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for ergodic optimization over expanding circle maps"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--map", g.map_file, "Map JSON {degree, sin, cos}; default doubling map");
  app.add_option("--config", g.config_file, "Config JSON document with any of the command's keys");
  app.add_option("--out", g.out_file, "Output file (default stdout)");
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed");
  auto* threads_opt = app.add_option("--threads", g.threads, "Worker threads (0: all cores)");

  std::string f_file, family_file, word_text, json_file;
  int grid = 4096, pmax = 16, depth = 40, max_iter = 200000, count = 1024, samples = 200, n1 = 1, n2 = 3;
  double tol = 1e-10, x = 0.5, threshold = 1e-6, t_value = 0.0, eps = -1.0, t_lo = 0.0, t_hi = 1.0;
  bool timing = false, golden = false;

  auto* sub = app.add_subcommand("subaction", "Calibrated sub-action and beta sandwich");
  sub->add_option("--f", f_file, "Performance function JSON");
  auto* sub_grid = sub->add_option("--grid", grid, "Grid size");
  auto* sub_tol = sub->add_option("--tol", tol, "Solver tolerance");
  sub->add_option("--max-iter", max_iter, "Iteration cap");
  auto* sub_pmax = sub->add_option("--pmax", pmax, "Orbit period bound for the lower bound (default 12)");

  auto* mx = app.add_subcommand("maximize", "Classify the maximizing measure");
  mx->add_option("--f", f_file, "Performance function JSON");
  auto* mx_pmax = mx->add_option("--pmax", pmax, "Maximal period");
  auto* mx_grid = mx->add_option("--grid", grid, "Grid size");
  auto* mx_tol = mx->add_option("--tol", tol, "Classification tolerance (default 1e-6 (1 + Lip f))");

  auto* hs = app.add_subcommand("hseries", "Branch series value and derivative along a coding");
  hs->add_option("--f", f_file, "Performance function JSON");
  hs->add_option("--word", word_text, "Coding cycle, e.g. 01 (repeated up to depth)")->required();
  hs->add_option("--x", x, "Evaluation point");
  auto* hs_depth = hs->add_option("--depth", depth, "Truncation depth");

  auto* st = app.add_subcommand("structure", "Critical values, Sturmian-like test, supercritical scan");
  st->add_option("--f", f_file, "Performance function JSON");
  auto* st_grid = st->add_option("--grid", grid, "Grid size");
  auto* st_depth = st->add_option("--depth", depth, "Coding depth (default 30)");
  auto* st_thr = st->add_option("--threshold", threshold, "Derivative agreement threshold");
  st->add_option("--eps", eps, "Action-set slack (default: tolerance plus solver residual)");

  auto* sw = app.add_subcommand("sweep", "Parameter sweep over a one-parameter family");
  sw->add_option("--family", family_file, "Family JSON {base, shift} or {base, directions:[phi]}");
  auto* sw_count = sw->add_option("--count", count, "Number of uniform parameters in [lo, hi)");
  sw->add_option("--lo", t_lo, "Lower parameter");
  sw->add_option("--hi", t_hi, "Upper parameter (excluded)");
  auto* sw_pmax = sw->add_option("--pmax", pmax, "Maximal period");
  auto* sw_grid = sw->add_option("--grid", grid, "Grid size");
  sw->add_option("--json", json_file, "Also write the locking-interval summary JSON here");
  sw->add_flag("--timing", timing, "Record wall time per record (breaks byte-identical reruns)");

  auto* pv = app.add_subcommand("prevalence", "Monte Carlo over f0 + sum t_n phi_n, t_n uniform");
  pv->add_option("--family", family_file, "Family JSON {base, directions, rho}");
  auto* pv_samples = pv->add_option("--samples", samples, "Number of samples");
  auto* pv_pmax = pv->add_option("--pmax", pmax, "Maximal period");
  auto* pv_grid = pv->add_option("--grid", grid, "Grid size");
  pv->add_option("--json", json_file, "Also write the summary JSON here");

  auto* vi = app.add_subcommand("verify-identity", "Check the branch-integral identity at a critical value");
  vi->add_option("--family", family_file, "Family JSON (translation family expected)");
  vi->add_option("--t", t_value, "Family parameter");
  vi->add_flag("--golden", golden, "Bisect the staircase for the golden-mean rotation number first");
  auto* vi_grid = vi->add_option("--grid", grid, "Grid size (default 16384)");
  auto* vi_depth = vi->add_option("--depth", depth, "Pull-back depth");
  vi->add_option("--n1", n1, "Backward steps to a1");
  vi->add_option("--n2", n2, "Backward steps to a2");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!g.config_file.empty()) g.config = load_json_file(g.config_file);
    g.seed = pick<std::uint64_t>(seed_opt, g.seed, g.config, "seed", 1);
    g.threads = pick<unsigned>(threads_opt, g.threads, g.config, "threads", 0);
    const auto map = load_map(g);

    if (sub->parsed()) {
      const auto f = load_f(g, f_file);
      SolverOptions so;
      so.grid = pick(sub_grid, grid, g.config, "grid", 4096);
      so.tol = pick(sub_tol, tol, g.config, "tol", 1e-10);
      so.max_iter = max_iter;
      const auto field = compute_subaction(f, map, so);
      const auto orbits = enumerate_orbits(map, pick(sub_pmax, pmax, g.config, "pmax", 12));
      const auto s = beta_sandwich(f, map, field, orbits);
      emit_json(g, {{"beta", s.midpoint()},
                    {"lower", s.lower},
                    {"upper", s.upper},
                    {"interp_error", s.interp_error},
                    {"beta_solver", field.beta},
                    {"residual", field.residual},
                    {"subaction_defect", field.subaction_defect},
                    {"calibration_defect", field.calibration_defect},
                    {"lipschitz", field.lipschitz},
                    {"iterations", field.iterations},
                    {"degenerate", field.degenerate},
                    {"grid", field.grid_size()},
                    {"values", field.values}});
    } else if (mx->parsed()) {
      const auto f = load_f(g, f_file);
      ClassifyOptions co;
      co.solver.grid = pick(mx_grid, grid, g.config, "grid", 4096);
      co.tol = pick(mx_tol, tol, g.config, "tol", -1.0);
      const OrbitCatalog catalog(map, pick(mx_pmax, pmax, g.config, "pmax", 16));
      emit_json(g, to_json(classify_maximizer(f, map, catalog, co)));
    } else if (hs->parsed()) {
      const auto f = load_f(g, f_file);
      const auto q = CodingQuery::periodic(SymbolWord::parse(word_text), pick(hs_depth, depth, g.config, "depth", 40));
      const auto v = h_value(f, map, q, x);
      const auto dv = h_derivative(f, map, q, x);
      emit_json(g, {{"word", q.word().str()},
                    {"x", x},
                    {"value", v.value},
                    {"tail", v.tail},
                    {"derivative", dv.value},
                    {"derivative_tail", dv.tail}});
    } else if (st->parsed()) {
      const auto f = load_f(g, f_file);
      SolverOptions so;
      so.grid = pick(st_grid, grid, g.config, "grid", 4096);
      const auto field = compute_subaction(f, map, so);
      const double slack = eps >= 0 ? eps : default_action_slack(f, map, field);
      const auto est = mather_set_estimate(f, map, field, slack, 20);
      const auto report = critical_values(est.mather, map);
      const auto scan = supercritical_scan(f, map, est.mather, pick(st_depth, depth, g.config, "depth", 30),
                                           pick(st_thr, threshold, g.config, "threshold", 1e-6));
      json arcs = json::array();
      for (const auto& a : est.mather.arcs()) arcs.push_back({a.start, a.length});
      json hits = json::array();
      for (const auto& h : scan.hits)
        hits.push_back({{"point", h.point}, {"first", h.first.str()}, {"second", h.second.str()}, {"gap", h.gap},
                        {"status", "candidate"}});
      json out = to_json(report);
      out["beta"] = field.beta;
      out["mather_arcs"] = arcs;
      out["mather_length"] = est.mather.total_length();
      out["supercritical"] = {{"hits", hits},
                              {"samples", scan.samples},
                              {"branching", scan.branching},
                              {"undetermined", scan.undetermined}};
      emit_json(g, out);
    } else if (sw->parsed()) {
      const auto family = scalar_family_from_json(load_family(g, family_file));
      const int n = pick(sw_count, count, g.config, "count", 1024);
      const auto t_grid = uniform_grid(static_cast<std::size_t>(n), t_lo, t_hi);
      const int p = pick(sw_pmax, pmax, g.config, "pmax", 16);
      SweepOptions opts;
      opts.threads = g.threads;
      opts.record_timing = timing;
      opts.classify.solver.grid = pick(sw_grid, grid, g.config, "grid", 4096);
      opts.timeout = g.config.value("timeout", 0.0);
      opts.classify.eps = g.config.value("eps", -1.0);
      opts.classify.localization_cells = g.config.value("localization_cells", 3);
      const OrbitCatalog catalog(map, p);
      const auto records = sweep_family(family, t_grid, map, catalog, opts);
      std::ostringstream csv;
      write_sweep_csv(csv, records,
                      "ergolab sweep seed=" + std::to_string(g.seed) + " count=" + std::to_string(n) +
                          " pmax=" + std::to_string(p) + " grid=" + std::to_string(opts.classify.solver.grid));
      emit(g, csv.str());
      if (!json_file.empty()) {
        std::ofstream js(json_file);
        js << to_json(locking_intervals(records)).dump(2) << "\n";
      }
    } else if (pv->parsed()) {
      const json fam = load_family(g, family_file);
      if (!fam.contains("base")) throw ConfigError("family needs a 'base' function");
      const auto f0 = poly_from_json(fam.at("base"));
      const auto basis = basis_from_json(fam);
      const int p = pick(pv_pmax, pmax, g.config, "pmax", 16);
      SweepOptions opts;
      opts.threads = g.threads;
      opts.classify.solver.grid = pick(pv_grid, grid, g.config, "grid", 4096);
      const OrbitCatalog catalog(map, p);
      const int n = pick(pv_samples, samples, g.config, "samples", 200);
      const auto rep = prevalence_mc(f0, basis, static_cast<std::size_t>(n), g.seed, map, catalog, opts);
      std::ostringstream csv;
      write_prevalence_csv(csv, rep,
                           "ergolab prevalence seed=" + std::to_string(g.seed) + " samples=" + std::to_string(n) +
                               " pmax=" + std::to_string(p) + " grid=" + std::to_string(opts.classify.solver.grid));
      emit(g, csv.str());
      const std::string summary = to_json(rep).dump(2) + "\n";
      if (!json_file.empty()) std::ofstream(json_file) << summary;
      else std::cerr << summary;
    } else if (vi->parsed()) {
      const auto family = scalar_family_from_json(load_family(g, family_file));
      double t = t_value;
      if (golden) {
        const OrbitCatalog catalog(map, 16);
        t = bisect_rotation(family, catalog, (3.0 - std::sqrt(5.0)) / 2.0, 0.30, 0.45);
      }
      const auto f = family.at(t);
      SolverOptions so;
      so.grid = pick(vi_grid, grid, g.config, "grid", 16384);
      const auto field = compute_subaction(f, map, so);
      const auto est = mather_set_estimate(f, map, field, default_action_slack(f, map, field), 20);
      const BranchSelector selector(est.mather, map);
      const auto& crit = selector.report().criticals;
      if (crit.empty()) throw BranchAmbiguity("no critical value in the K-estimate");
      const auto z = backward_chain(selector, crit.front().point, std::max(n1, n2));
      const auto r = identity_check(f, map, field, selector, z[n1], z[n2], n1, n2,
                                    pick(vi_depth, depth, g.config, "depth", 40));
      json out = to_json(r);
      out["t"] = t;
      out["critical"] = crit.front().point;
      out["a1"] = z[n1];
      out["a2"] = z[n2];
      emit_json(g, out);
    }
  } catch (const std::exception& e) {
    std::cerr << "ergolab: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
