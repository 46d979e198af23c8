#include "ergolab/orbits.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ergolab/errors.hpp"

namespace ergolab {

Fraction PeriodicOrbit::rotation() const {
  long ones = 0;
  for (int c : word.letters()) ones += c != 0;
  const long p = static_cast<long>(word.size());
  const long g = std::gcd(ones, p);
  return g ? Fraction{ones / g, p / g} : Fraction{0, 1};
}

std::vector<double> PeriodicOrbit::symbol_frequencies(int degree) const {
  std::vector<double> freq(degree, 0.0);
  for (int c : word.letters()) freq.at(c) += 1.0;
  for (double& v : freq) v /= static_cast<double>(word.size());
  return freq;
}

std::vector<SymbolWord> lyndon_words(int degree, int max_length) {
  std::vector<SymbolWord> out;
  if (max_length < 1) return out;
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    out.emplace_back(w);
    const std::size_t m = w.size();
    while (static_cast<int>(w.size()) < max_length) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == degree - 1) w.pop_back();
  }
  return out;
}

PeriodicOrbit orbit_of_word(const ExpandingCircleMap& map, const SymbolWord& word) {
  if (word.empty() || !word.is_primitive())
    throw std::invalid_argument("orbit_of_word: word must be primitive and nonempty");
  if (word.max_letter() >= map.degree()) throw std::out_of_range("orbit_of_word: letter exceeds degree");
  // tau_w contracts by at least lambda^-p per pass.
  double x = 0.5;
  for (int pass = 0; pass < 400; ++pass) {
    const double next = map.branch_composition(word, x);
    const double step = std::abs(next - x);
    x = next;
    if (step <= 1e-15) break;
  }
  // Newton polish on tau_w(x) - x, whose slope is tau_w'(x) - 1 < 0.
  for (int pass = 0; pass < 3; ++pass) {
    const double r = map.branch_composition(word, x) - x;
    if (r == 0.0) break;
    const double next = x - r / (map.branch_derivative(word, x) - 1.0);
    if (std::abs(map.branch_composition(word, next) - next) >= std::abs(r)) break;
    x = next;
  }
  const std::size_t p = word.size();
  // backward[j] = tau_{w_j} ... tau_{w_1}(x); backward[p] = x.
  std::vector<double> backward(p + 1);
  backward[0] = x;
  for (std::size_t j = 0; j < p; ++j) backward[j + 1] = map.inverse_branch(word[j], backward[j]);
  PeriodicOrbit orbit;
  orbit.word = word;
  orbit.points.resize(p);
  for (std::size_t k = 0; k < p; ++k) orbit.points[k] = wrap01(backward[(p - k) % p]);
  return orbit;
}

std::vector<PeriodicOrbit> enumerate_orbits(const ExpandingCircleMap& map, int p_max,
                                            std::uint64_t budget) {
  if (p_max < 1) throw std::invalid_argument("enumerate_orbits: p_max must be >= 1");
  const double words = std::pow(static_cast<double>(map.degree()), p_max);
  if (words > static_cast<double>(budget))
    throw BudgetExceeded("enumerate_orbits: d^p_max = " + std::to_string(words) + " exceeds budget " +
                         std::to_string(budget));
  std::vector<PeriodicOrbit> out;
  for (const SymbolWord& w : lyndon_words(map.degree(), p_max)) {
    // The fixed point of tau_{d-1} is 1, the same point as the fixed point 0.
    if (w.size() == 1 && w[0] == map.degree() - 1) continue;
    out.push_back(orbit_of_word(map, w));
  }
  return out;
}

double orbit_average(const TrigPolynomial& f, const PeriodicOrbit& orbit) {
  if (orbit.points.empty()) throw std::invalid_argument("orbit_average: empty orbit");
  double s = 0.0;
  for (double x : orbit.points) s += f(x);
  return s / static_cast<double>(orbit.points.size());
}

TrigPolynomial locking_perturbation(const PeriodicOrbit& orbit) {
  return locking_perturbation(std::span<const double>(orbit.points));
}

OrbitCatalog::OrbitCatalog(const ExpandingCircleMap& map, int p_max)
    : OrbitCatalog(enumerate_orbits(map, p_max), p_max) {}

OrbitCatalog::OrbitCatalog(std::vector<PeriodicOrbit> orbits, int p_max)
    : orbits_(std::move(orbits)), p_max_(p_max) {
  offsets_.reserve(orbits_.size() + 1);
  offsets_.push_back(0);
  for (const auto& o : orbits_) {
    points_.insert(points_.end(), o.points.begin(), o.points.end());
    offsets_.push_back(points_.size());
  }
}

std::vector<double> OrbitCatalog::averages(const TrigPolynomial& f) const {
  std::vector<double> out(orbits_.size());
  for (std::size_t i = 0; i < orbits_.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) s += f(points_[k]);
    out[i] = s / static_cast<double>(offsets_[i + 1] - offsets_[i]);
  }
  return out;
}

}  // namespace ergolab
