#include "ergolab/invariant_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ergolab/circle_map.hpp"

namespace ergolab {

InvariantSetEstimate InvariantSetEstimate::full_circle(double resolution) {
  InvariantSetEstimate k;
  k.arcs_ = {{0.0, 1.0}};
  k.resolution_ = resolution;
  return k;
}

InvariantSetEstimate InvariantSetEstimate::from_arcs(std::vector<Arc> arcs, double resolution) {
  InvariantSetEstimate k;
  k.arcs_ = std::move(arcs);
  k.resolution_ = resolution;
  k.normalize();
  return k;
}

InvariantSetEstimate InvariantSetEstimate::from_mask(const std::vector<char>& mask) {
  const std::size_t n = mask.size();
  const double h = n ? 1.0 / static_cast<double>(n) : 0.0;
  std::vector<Arc> arcs;
  for (std::size_t j = 0; j < n;) {
    if (!mask[j]) {
      ++j;
      continue;
    }
    std::size_t e = j;
    while (e < n && mask[e]) ++e;
    arcs.push_back({wrap01((static_cast<double>(j) - 0.5) * h), static_cast<double>(e - j) * h});
    j = e;
  }
  return from_arcs(std::move(arcs), h);
}

InvariantSetEstimate InvariantSetEstimate::from_points(std::span<const double> points, double radius) {
  std::vector<Arc> arcs;
  for (double p : points) arcs.push_back({wrap01(p - radius), 2.0 * radius});
  return from_arcs(std::move(arcs), 0.0);
}

void InvariantSetEstimate::normalize() {
  std::vector<Arc> in;
  for (Arc a : arcs_) {
    if (a.length < 0.0) continue;
    if (a.length >= 1.0) {
      arcs_ = {{0.0, 1.0}};
      return;
    }
    a.start = wrap01(a.start);
    in.push_back(a);
  }
  std::sort(in.begin(), in.end(), [](const Arc& a, const Arc& b) { return a.start < b.start; });
  std::vector<Arc> out;
  for (const Arc& a : in) {
    if (!out.empty() && a.start <= out.back().end()) {
      out.back().length = std::max(out.back().end(), a.end()) - out.back().start;
    } else {
      out.push_back(a);
    }
  }
  // Arcs running past 1 may swallow the first arcs.
  while (out.size() > 1 && out.back().end() - 1.0 >= out.front().start) {
    const double e = std::max(out.back().end(), out.front().end() + 1.0);
    out.back().length = e - out.back().start;
    out.erase(out.begin());
  }
  if (out.size() == 1 && out[0].length >= 1.0) out[0] = {0.0, 1.0};
  arcs_ = std::move(out);
}

bool InvariantSetEstimate::is_full_circle() const {
  return arcs_.size() == 1 && arcs_[0].length >= 1.0;
}

double InvariantSetEstimate::total_length() const {
  double s = 0.0;
  for (const Arc& a : arcs_) s += a.length;
  return std::min(s, 1.0);
}

double InvariantSetEstimate::distance(double x) const {
  if (arcs_.empty()) return std::numeric_limits<double>::infinity();
  if (is_full_circle()) return 0.0;
  x = wrap01(x);
  auto dist = [x](const Arc& a) {
    const double off = wrap01(x - a.start);
    return off <= a.length ? 0.0 : std::min(off - a.length, 1.0 - off);
  };
  const auto it = std::upper_bound(arcs_.begin(), arcs_.end(), x,
                                   [](double v, const Arc& a) { return v < a.start; });
  const std::size_t i = static_cast<std::size_t>(it - arcs_.begin());
  double best = std::min(dist(arcs_.front()), dist(arcs_.back()));
  if (i > 0) best = std::min(best, dist(arcs_[i - 1]));
  if (i < arcs_.size()) best = std::min(best, dist(arcs_[i]));
  return best;
}

std::vector<double> InvariantSetEstimate::samples(double spacing) const {
  std::vector<double> out;
  for (const Arc& a : arcs_) {
    const bool full = a.length >= 1.0;
    const auto n = static_cast<std::size_t>(std::ceil(a.length / spacing));
    const std::size_t count = full ? std::max<std::size_t>(n, 1) : n + 1;
    for (std::size_t k = 0; k < count; ++k) {
      const double off = n ? a.length * static_cast<double>(k) / static_cast<double>(n) : 0.0;
      out.push_back(wrap01(a.start + off));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ergolab
