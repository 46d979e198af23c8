#pragma once

#include <span>
#include <vector>

namespace ergolab {

// Closed arc [start, start + length] on the circle, start in [0, 1).
struct Arc {
  double start = 0.0;
  double length = 0.0;
  double end() const { return start + length; }
};

// Finite union of pairwise disjoint arcs, sorted by start.
class InvariantSetEstimate {
 public:
  InvariantSetEstimate() = default;

  static InvariantSetEstimate full_circle(double resolution = 0.0);
  static InvariantSetEstimate from_arcs(std::vector<Arc> arcs, double resolution = 0.0);
  // Grid-cell convention: mask[j] covers [j/N - 1/(2N), j/N + 1/(2N)].
  static InvariantSetEstimate from_mask(const std::vector<char>& mask);
  static InvariantSetEstimate from_points(std::span<const double> points, double radius);

  const std::vector<Arc>& arcs() const { return arcs_; }
  bool empty() const { return arcs_.empty(); }
  bool is_full_circle() const;
  double total_length() const;

  double distance(double x) const;
  bool contains(double x, double delta = 0.0) const { return distance(x) <= delta; }

  // Sample points on every arc with spacing at most `spacing`, endpoints included.
  std::vector<double> samples(double spacing) const;

  // Grid spacing the estimate was built on (0 when exact).
  double resolution() const { return resolution_; }
  double epsilon = 0.0;
  int generation = 0;

 private:
  void normalize();

  std::vector<Arc> arcs_;
  double resolution_ = 0.0;
};

}  // namespace ergolab
