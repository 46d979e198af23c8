#include "ergolab/structure.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "ergolab/errors.hpp"

namespace ergolab {

std::string to_string(Verdict v) {
  return v == Verdict::SturmianLike ? "SturmianLike" : "NotSturmianLike";
}

namespace {

struct Resolved {
  double delta;
  double spacing;
  double max_width;
  double window;
};

Resolved resolve(const StructureOptions& o, const InvariantSetEstimate& k) {
  Resolved r{};
  const double res = k.resolution();
  r.delta = o.delta >= 0 ? o.delta : (res > 0 ? 2.0 * res : 1e-9);
  r.spacing = o.spacing > 0 ? o.spacing : 0.5 * (res > 0 ? std::min(r.delta, res) : r.delta);
  r.max_width = o.max_cluster_width >= 0 ? o.max_cluster_width : 4.0 * r.delta;
  r.window = o.window >= 0 ? o.window : 8.0 * r.delta;
  return r;
}

struct Sample {
  double x;
  std::vector<int> branches;
};

std::vector<Sample> branch_samples(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                                   const Resolved& r) {
  std::vector<Sample> out;
  for (double x : k.samples(r.spacing)) {
    Sample s{x, {}};
    for (int i = 0; i < map.degree(); ++i)
      if (k.contains(map.inverse_branch(i, x), r.delta)) s.branches.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

int mod(int a, int d) { return ((a % d) + d) % d; }

// Label carried from `from` to `to` moving in direction dir (+1 increasing).
int transport(int label, double from, double to, int dir, int d) {
  if (dir > 0) return to < from ? mod(label + 1, d) : label;
  return to > from ? mod(label - 1, d) : label;
}

bool consistent(const std::vector<int>& labels) {
  return std::adjacent_find(labels.begin(), labels.end(), std::not_equal_to<>()) == labels.end();
}

}  // namespace

CriticalReport critical_values(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                               const StructureOptions& options) {
  if (k.empty()) throw std::invalid_argument("critical_values: empty K-estimate");
  const Resolved r = resolve(options, k);
  const int d = map.degree();
  const auto samples = branch_samples(k, map, r);
  const std::size_t n = samples.size();

  // Runs of adjacent candidate samples, in sample order.
  std::vector<std::vector<std::size_t>> groups;
  const double join = 2.0 * r.spacing;
  for (std::size_t j = 0; j < n; ++j) {
    if (samples[j].branches.size() < 2) continue;
    if (!groups.empty()) {
      const std::size_t prev = groups.back().back();
      if (prev + 1 == j && samples[j].x - samples[prev].x <= join) {
        groups.back().push_back(j);
        continue;
      }
    }
    groups.push_back({j});
  }
  if (groups.size() > 1 && groups.front().front() == 0 && groups.back().back() == n - 1 &&
      samples[0].x + 1.0 - samples[n - 1].x <= join) {
    auto& last = groups.back();
    last.insert(last.end(), groups.front().begin(), groups.front().end());
    groups.erase(groups.begin());
  }

  CriticalReport rep;
  rep.delta = r.delta;
  for (const auto& grp : groups) {
    const double l = samples[grp.front()].x;
    const double rgt = samples[grp.back()].x;
    const double width = grp.size() == n ? 1.0 : wrap01(rgt - l);
    if (width > r.max_width) {
      for (std::size_t j : grp) rep.criticals.push_back({samples[j].x, samples[j].branches, false, 0.0});
      continue;
    }
    CriticalValue cv;
    cv.point = wrap01(l + 0.5 * width);
    cv.width = width;
    for (std::size_t j : grp)
      for (int b : samples[j].branches)
        if (std::find(cv.branches.begin(), cv.branches.end(), b) == cv.branches.end()) cv.branches.push_back(b);
    std::sort(cv.branches.begin(), cv.branches.end());

    std::vector<int> left, right;
    for (std::size_t step = 1; step < n; ++step) {
      const Sample& s = samples[(grp.front() + n - step) % n];
      if (wrap01(l - s.x) > r.window) break;
      if (s.branches.size() == 1) left.push_back(transport(s.branches[0], s.x, l, +1, d));
    }
    for (std::size_t step = 1; step < n; ++step) {
      const Sample& s = samples[(grp.back() + step) % n];
      if (wrap01(s.x - rgt) > r.window) break;
      if (s.branches.size() == 1) right.push_back(transport(s.branches[0], s.x, rgt, -1, d));
    }
    cv.regular = consistent(left) && consistent(right);
    rep.criticals.push_back(std::move(cv));
  }
  std::sort(rep.criticals.begin(), rep.criticals.end(),
            [](const CriticalValue& a, const CriticalValue& b) { return a.point < b.point; });
  for (const auto& cv : rep.criticals) {
    if (!cv.regular) {
      rep.verdict = Verdict::NotSturmianLike;
      rep.witness = cv.point;
      break;
    }
  }
  return rep;
}

Verdict sturmian_like_check(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                            const StructureOptions& options) {
  return critical_values(k, map, options).verdict;
}

ScanResult supercritical_scan(const TrigPolynomial& f, const ExpandingCircleMap& map,
                              const InvariantSetEstimate& k, int depth, double threshold,
                              const ScanOptions& options) {
  if (depth < 1) throw std::invalid_argument("supercritical_scan: depth must be >= 1");
  StructureOptions so;
  so.delta = options.delta;
  so.spacing = options.spacing;
  const Resolved r = resolve(so, k);
  const int d = map.degree();
  const double lambda = map.expansion().lambda_star;
  const double lip = f.lipschitz_bound();
  auto tail = [&](int level) { return lip * std::pow(lambda, -level) / (lambda - 1.0); };

  auto xs = k.samples(r.spacing);
  if (xs.size() > options.max_samples) {
    std::vector<double> thin(options.max_samples);
    for (std::size_t j = 0; j < thin.size(); ++j) thin[j] = xs[j * xs.size() / thin.size()];
    xs = std::move(thin);
  }

  struct Branch {
    double point;
    double slope;
    double sum;
  };
  struct Node {
    Branch a, b;
    int level;
    std::vector<int> wa, wb;
  };
  auto step = [&](const Branch& from, int letter) -> std::optional<Branch> {
    const double y = map.inverse_branch(letter, from.point);
    if (!k.contains(y, r.delta)) return std::nullopt;
    const double slope = from.slope / map.derivative(y);
    return Branch{y, slope, from.sum + f.deriv(y) * slope};
  };

  ScanResult res;
  res.samples = xs.size();
  for (double x : xs) {
    std::vector<std::pair<int, Branch>> first;
    for (int i = 0; i < d; ++i)
      if (auto b = step(Branch{x, 1.0, 0.0}, i)) first.emplace_back(i, *b);
    if (first.size() < 2) continue;
    ++res.branching;

    std::vector<Node> stack;
    for (std::size_t p = 0; p < first.size(); ++p)
      for (std::size_t q = first.size(); q-- > p + 1;)
        stack.push_back({first[p].second, first[q].second, 1, {first[p].first}, {first[q].first}});
    std::size_t nodes = 0;
    bool found = false;
    while (!stack.empty() && !found) {
      Node node = std::move(stack.back());
      stack.pop_back();
      if (++nodes > options.node_budget) break;
      const double diff = std::abs(node.a.sum - node.b.sum);
      const double slack = 2.0 * tail(node.level);
      if (diff > threshold + slack) continue;
      if (node.level == depth) {
        res.hits.push_back({x, SymbolWord(node.wa), SymbolWord(node.wb), diff + slack});
        found = true;
        break;
      }
      for (int i = d; i-- > 0;) {
        const auto na = step(node.a, i);
        if (!na) continue;
        for (int j = d; j-- > 0;) {
          const auto nb = step(node.b, j);
          if (!nb) continue;
          Node child{*na, *nb, node.level + 1, node.wa, node.wb};
          child.wa.push_back(i);
          child.wb.push_back(j);
          stack.push_back(std::move(child));
        }
      }
    }
    if (!found && nodes > options.node_budget) ++res.undetermined;
  }
  return res;
}

BranchSelector::BranchSelector(const InvariantSetEstimate& k, const ExpandingCircleMap& map,
                               const StructureOptions& options)
    : map_(&map), report_(critical_values(k, map, options)) {
  const Resolved r = resolve(options, k);
  const int d = map.degree();
  for (const auto& cv : report_.criticals) cuts_.push_back(cv.point);
  for (const auto& s : branch_samples(k, map, r)) {
    if (s.branches.size() != 1) continue;
    positions_.push_back(s.x);
    labels_.push_back(s.branches[0]);
  }
  const std::size_t n = positions_.size();
  for (std::size_t j = 0; j < n && n > 1; ++j) {
    const std::size_t nx = (j + 1) % n;
    const double a = positions_[j], b = positions_[nx];
    const double gap = wrap01(b - a);
    const bool cut_between = std::any_of(cuts_.begin(), cuts_.end(), [&](double c) {
      const double o = wrap01(c - a);
      return o > 0.0 && o < gap;
    });
    if (!cut_between && transport(labels_[j], a, b, +1, d) != labels_[nx])
      switches_.push_back(wrap01(a + 0.5 * gap));
  }
}

int BranchSelector::label(double y, int side) const {
  const std::size_t n = positions_.size();
  if (n == 0) throw BranchAmbiguity("branch selector: K-estimate has no single-branch samples");
  const int d = map_->degree();
  y = wrap01(y);
  constexpr double kSame = 1e-14;
  // Nearest sample in direction dir, unless a cut lies strictly between.
  auto search = [&](int dir, bool cut_at_y_blocks) -> std::optional<int> {
    std::size_t idx;
    if (dir > 0) {
      idx = static_cast<std::size_t>(std::lower_bound(positions_.begin(), positions_.end(), y) - positions_.begin());
      if (idx == n) idx = 0;
    } else {
      auto it = std::upper_bound(positions_.begin(), positions_.end(), y);
      idx = it == positions_.begin() ? n - 1 : static_cast<std::size_t>(it - positions_.begin()) - 1;
    }
    const double s = positions_[idx];
    const double reach = dir > 0 ? wrap01(s - y) : wrap01(y - s);
    for (double c : cuts_) {
      const double o = dir > 0 ? wrap01(c - y) : wrap01(y - c);
      const bool at_y = o <= kSame || o >= 1.0 - kSame;
      if (at_y ? cut_at_y_blocks : o < reach) return std::nullopt;
    }
    return transport(labels_[idx], s, y, -dir, d);
  };
  const int dir = side >= 0 ? 1 : -1;
  if (auto l = search(dir, false)) return *l;
  if (auto l = search(-dir, true)) return *l;
  throw BranchAmbiguity("branch selector: no K sample decides the branch at " + std::to_string(y));
}

double BranchSelector::pull_back(double y, int side) const {
  return wrap01(map_->inverse_branch(label(y, side), wrap01(y)));
}

std::vector<double> backward_chain(const BranchSelector& selector, double c, int n) {
  std::vector<double> z{wrap01(c)};
  for (int k = 0; k < n; ++k) z.push_back(selector.pull_back(z.back(), +1));
  return z;
}

IdentityResult identity_check(const TrigPolynomial& f, const ExpandingCircleMap& map, const SubActionField& g,
                              const BranchSelector& selector, double a1, double a2, int n1, int n2,
                              int depth) {
  IdentityResult out;
  a1 = wrap01(a1);
  a2 = wrap01(a2);
  if (circle_distance(a1, a2) == 0.0) return out;
  if (n1 < 0 || n2 < 0 || depth < 1) throw std::invalid_argument("identity_check: bad orders or depth");
  double e1 = a1, e2 = a2, s1 = 0.0, s2 = 0.0;
  for (int k = 0; k < n1; ++k) {
    s1 += f(e1);
    e1 = map.circle(e1);
  }
  for (int k = 0; k < n2; ++k) {
    s2 += f(e2);
    e2 = map.circle(e2);
  }
  if (circle_distance(e1, e2) > 1e-8)
    throw std::invalid_argument("identity_check: T^n1(a1) and T^n2(a2) differ");
  if (selector.report().verdict != Verdict::SturmianLike)
    throw BranchAmbiguity("identity_check: K-estimate has irregular critical values");

  out.rhs_holonomy = g(a2) - g(a1);
  out.rhs_orbit = s1 - s2 + (n2 - n1) * g.beta;

  std::vector<Arc> w{{a1, wrap01(a2 - a1)}};
  const double w0 = w[0].length;
  const auto& cuts = selector.cuts();
  const auto& switches = selector.switches();
  double lhs = 0.0;
  for (int k = 1; k <= depth; ++k) {
    std::vector<Arc> next;
    for (const Arc& piece : w) {
      std::vector<double> offsets{0.0};
      for (double c : cuts) {
        const double o = wrap01(c - piece.start);
        if (o > 1e-15 && o < piece.length - 1e-15) offsets.push_back(o);
      }
      for (double sw : switches) {
        const double o = wrap01(sw - piece.start);
        if (o > 0.0 && o < piece.length)
          throw BranchAmbiguity("identity_check: branch choice changes inside an arc at " + std::to_string(sw));
      }
      std::sort(offsets.begin(), offsets.end());
      offsets.push_back(piece.length);
      for (std::size_t j = 0; j + 1 < offsets.size(); ++j) {
        const double u = wrap01(piece.start + offsets[j]);
        const double len = offsets[j + 1] - offsets[j];
        const int i = selector.label(u, +1);
        const double s = map.inverse_branch(i, u);
        const double e = map.lift_inverse(u + i + len);
        next.push_back({wrap01(s), e - s});
      }
    }
    w = std::move(next);
    for (const Arc& a : w) lhs += f(a.end()) - f(a.start);
  }
  out.lhs = lhs;
  out.pieces = w.size();
  out.holonomy_residual = std::abs(out.lhs - out.rhs_holonomy);
  out.orbit_residual = std::abs(out.rhs_holonomy - out.rhs_orbit);
  const double lambda = map.expansion().lambda_star;
  out.truncation_bound = f.lipschitz_bound() * w0 * std::pow(lambda, -depth) / (lambda - 1.0);
  return out;
}

}  // namespace ergolab
