#include "ergolab/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kNewtonCap = 200;
}  // namespace

double wrap01(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

double circle_offset(double a, double b) {
  double d = wrap01(b - a);
  return d > 0.5 ? d - 1.0 : d;
}

double circle_distance(double a, double b) { return std::abs(circle_offset(a, b)); }

SymbolWord::SymbolWord(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int c : letters_)
    if (c < 0) throw std::invalid_argument("SymbolWord: negative letter");
}

SymbolWord SymbolWord::parse(std::string_view text) {
  std::vector<int> letters;
  letters.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') throw std::invalid_argument("SymbolWord: expected digits, got '" + std::string(text) + "'");
    letters.push_back(c - '0');
  }
  return SymbolWord(std::move(letters));
}

SymbolWord SymbolWord::repeated(int letter, std::size_t n) {
  return SymbolWord(std::vector<int>(n, letter));
}

int SymbolWord::max_letter() const {
  return letters_.empty() ? -1 : *std::max_element(letters_.begin(), letters_.end());
}

bool SymbolWord::is_primitive() const {
  const std::size_t n = letters_.size();
  if (n == 0) return false;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = letters_[i] == letters_[i - p];
    if (periodic) return false;
  }
  return true;
}

SymbolWord SymbolWord::rotated(std::size_t k) const {
  std::vector<int> out(letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i) out[i] = letters_[(i + k) % letters_.size()];
  return SymbolWord(std::move(out));
}

SymbolWord SymbolWord::min_rotation() const {
  SymbolWord best = *this;
  for (std::size_t k = 1; k < letters_.size(); ++k) best = std::min(best, rotated(k));
  return best;
}

SymbolWord SymbolWord::prefix(std::size_t n) const {
  return SymbolWord(std::vector<int>(letters_.begin(), letters_.begin() + std::min(n, letters_.size())));
}

SymbolWord SymbolWord::concat(const SymbolWord& other) const {
  std::vector<int> out = letters_;
  out.insert(out.end(), other.letters_.begin(), other.letters_.end());
  return SymbolWord(std::move(out));
}

std::string SymbolWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (int c : letters_) s.push_back(static_cast<char>('0' + c));
  return s;
}

ExpandingCircleMap::ExpandingCircleMap(int degree, std::vector<double> sin_coeffs,
                                       std::vector<double> cos_coeffs, int expansion_grid)
    : degree_(degree), sin_(std::move(sin_coeffs)), cos_(std::move(cos_coeffs)) {
  if (degree_ < 2) throw std::invalid_argument("ExpandingCircleMap: degree must be >= 2");
  auto trim = [](std::vector<double>& v) {
    while (!v.empty() && v.back() == 0.0) v.pop_back();
  };
  trim(sin_);
  trim(cos_);
  for (double a : sin_) perturbation_bound_ += std::abs(a);
  for (double b : cos_) perturbation_bound_ += 2.0 * std::abs(b);
  expansion_ = expansion_constants(*this, expansion_grid);
  if (is_linear()) {
    max_derivative_ = degree_;
  } else {
    for (int k = 0; k < expansion_grid; ++k)
      max_derivative_ = std::max(max_derivative_, derivative(static_cast<double>(k) / expansion_grid));
  }
}

int ExpandingCircleMap::harmonics() const {
  return static_cast<int>(std::max(sin_.size(), cos_.size()));
}

double ExpandingCircleMap::lift(double x) const {
  double v = degree_ * x;
  if (is_linear()) return v;
  const double s1 = std::sin(kTwoPi * x), c1 = std::cos(kTwoPi * x);
  double s = s1, c = c1;
  const std::size_t m = std::max(sin_.size(), cos_.size());
  for (std::size_t k = 0; k < m; ++k) {
    if (k < sin_.size()) v += sin_[k] * s;
    if (k < cos_.size()) v += cos_[k] * (c - 1.0);
    const double sn = s * c1 + c * s1;
    c = c * c1 - s * s1;
    s = sn;
  }
  return v;
}

double ExpandingCircleMap::derivative(double x) const {
  double v = degree_;
  if (is_linear()) return v;
  const double s1 = std::sin(kTwoPi * x), c1 = std::cos(kTwoPi * x);
  double s = s1, c = c1;
  const std::size_t m = std::max(sin_.size(), cos_.size());
  for (std::size_t k = 0; k < m; ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    if (k < sin_.size()) v += sin_[k] * w * c;
    if (k < cos_.size()) v -= cos_[k] * w * s;
    const double sn = s * c1 + c * s1;
    c = c * c1 - s * s1;
    s = sn;
  }
  return v;
}

double ExpandingCircleMap::solve(double z) const {
  if (is_linear()) return z / degree_;
  double lo = (z - perturbation_bound_) / degree_ - 1e-12;
  double hi = (z + perturbation_bound_) / degree_ + 1e-12;
  double x = z / degree_;
  const double tol = 1e-13 * (1.0 + std::abs(z));
  for (int it = 0; it < kNewtonCap; ++it) {
    const double r = lift(x) - z;
    if (std::abs(r) <= tol) return x;
    if (r > 0) hi = x; else lo = x;
    double next = x - r / derivative(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(x))) return next;
    x = next;
  }
  throw NonConvergence("inverse branch did not converge for y + i = " + std::to_string(z));
}

double ExpandingCircleMap::inverse_branch(int i, double y) const {
  if (i < 0 || i >= degree_) throw std::out_of_range("inverse_branch: branch index out of range");
  return solve(y + i);
}

double ExpandingCircleMap::lift_inverse(double y) const {
  if (is_linear()) return y / degree_;
  const double k = std::floor(y / degree_);
  return solve(y - k * degree_) + k;
}

double ExpandingCircleMap::branch_composition(const SymbolWord& word, double x) const {
  if (word.empty()) throw std::invalid_argument("branch_composition: empty word");
  for (int c : word.letters()) x = inverse_branch(c, x);
  return x;
}

double ExpandingCircleMap::branch_derivative(const SymbolWord& word, double x) const {
  if (word.empty()) throw std::invalid_argument("branch_derivative: empty word");
  double d = 1.0;
  for (int c : word.letters()) {
    x = inverse_branch(c, x);
    d /= derivative(x);
  }
  return d;
}

Expansion expansion_constants(const ExpandingCircleMap& map, int grid_size) {
  if (map.is_linear()) return {1.0, static_cast<double>(map.degree())};
  if (grid_size < 1) throw std::invalid_argument("expansion_constants: grid_size must be positive");
  double lo = std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_size; ++k)
    lo = std::min(lo, map.derivative(static_cast<double>(k) / grid_size));
  if (lo <= 1.0) throw NotExpanding("minimum derivative " + std::to_string(lo) + " is not above 1");
  return {1.0, lo - 1e-9};
}

}  // namespace ergolab
