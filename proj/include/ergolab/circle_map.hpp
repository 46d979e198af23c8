#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ergolab {

// x mod 1 in [0, 1).
double wrap01(double x);

// Signed distance from a to b on the circle, in (-1/2, 1/2].
double circle_offset(double a, double b);

double circle_distance(double a, double b);

// Finite word over the alphabet {0, ..., d-1}. Branch compositions apply
// the first letter first.
class SymbolWord {
 public:
  SymbolWord() = default;
  explicit SymbolWord(std::vector<int> letters);

  // Digits only, e.g. "0101".
  static SymbolWord parse(std::string_view text);
  static SymbolWord repeated(int letter, std::size_t n);

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  int operator[](std::size_t i) const { return letters_[i]; }
  const std::vector<int>& letters() const { return letters_; }
  int max_letter() const;

  // Not a proper power of a shorter word.
  bool is_primitive() const;
  SymbolWord rotated(std::size_t k) const;
  SymbolWord min_rotation() const;
  SymbolWord prefix(std::size_t n) const;
  SymbolWord concat(const SymbolWord& other) const;
  void push_back(int letter) { letters_.push_back(letter); }

  std::string str() const;

  auto operator<=>(const SymbolWord&) const = default;
  bool operator==(const SymbolWord&) const = default;

 private:
  std::vector<int> letters_;
};

struct Expansion {
  double c_star = 1.0;
  double lambda_star = 2.0;
};

// Lift  T(x) = d x + sum_k a_k sin(2 pi k x) + b_k (cos(2 pi k x) - 1),
// so T(0) = 0 and T(x + 1) = T(x) + d.
class ExpandingCircleMap {
 public:
  ExpandingCircleMap(int degree, std::vector<double> sin_coeffs = {},
                     std::vector<double> cos_coeffs = {},
                     int expansion_grid = 1 << 14);

  static ExpandingCircleMap doubling() { return ExpandingCircleMap(2); }

  int degree() const { return degree_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  bool is_linear() const { return sin_.empty() && cos_.empty(); }
  // Largest harmonic in the perturbation.
  int harmonics() const;

  double lift(double x) const;
  double derivative(double x) const;
  // Circle map, result in [0, 1).
  double circle(double x) const { return wrap01(lift(x)); }

  // Unique x with lift(x) = y + i.
  double inverse_branch(int i, double y) const;
  // Inverse of the lift on the whole line.
  double lift_inverse(double y) const;

  double branch_composition(const SymbolWord& word, double x) const;
  double branch_derivative(const SymbolWord& word, double x) const;

  Expansion expansion() const { return expansion_; }
  double max_derivative() const { return max_derivative_; }

 private:
  double solve(double z) const;

  int degree_;
  std::vector<double> sin_;
  std::vector<double> cos_;
  double perturbation_bound_ = 0.0;
  Expansion expansion_;
  double max_derivative_ = 0.0;
};

Expansion expansion_constants(const ExpandingCircleMap& map, int grid_size);

}  // namespace ergolab
