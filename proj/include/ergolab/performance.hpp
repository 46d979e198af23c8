#pragma once

#include <limits>
#include <span>
#include <vector>

namespace ergolab {

// f(x) = c + sum_k a_k cos(2 pi k x) + b_k sin(2 pi k x), k = 1..M.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  TrigPolynomial(double constant, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static TrigPolynomial constant_fn(double c) { return TrigPolynomial(c, {}, {}); }
  // amplitude * cos(2 pi k (x - shift))
  static TrigPolynomial cosine(int k, double amplitude = 1.0, double shift = 0.0);

  double constant() const { return constant_; }
  const std::vector<double>& cos_coeffs() const { return cos_; }
  const std::vector<double>& sin_coeffs() const { return sin_; }
  int harmonics() const;

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double deriv(double x) const;
  TrigPolynomial differentiated() const;

  // sum 2 pi k (|a_k| + |b_k|) >= max |f'|
  double lipschitz_bound() const;
  // sum |a_k| + |b_k|: f stays within this of its constant term.
  double oscillation_bound() const;
  // |c| + sum (|a_k| + |b_k|) e^{rho k}
  double weighted_norm(double rho) const;
  bool is_constant(double tol = 0.0) const { return oscillation_bound() <= tol; }

  // x -> f(x - t)
  TrigPolynomial shifted(double t) const;

  TrigPolynomial& operator+=(const TrigPolynomial& other);
  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator*(double s, const TrigPolynomial& f);
  friend TrigPolynomial operator+(TrigPolynomial f, double c) {
    f.constant_ += c;
    return f;
  }

 private:
  void trim();

  double constant_ = 0.0;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

struct PerturbationBasis {
  std::vector<TrigPolynomial> directions;
  double rho = 0.5;
  double norm_sum = 0.0;

  // Throws std::invalid_argument when the weighted norms exceed declared_bound.
  static PerturbationBasis make(std::vector<TrigPolynomial> directions, double rho = 0.5,
                                double declared_bound = std::numeric_limits<double>::infinity());
  std::size_t size() const { return directions.size(); }
};

// f0 + sum t_n phi_n with every t_n in [0, 1].
TrigPolynomial family_member(const TrigPolynomial& f0, const PerturbationBasis& basis,
                             std::span<const double> t);

// -prod_{p in points} sin^2(pi (x - p)): zero on the points, negative elsewhere.
TrigPolynomial locking_perturbation(std::span<const double> points);

// One-parameter family for sweeps: translation f(x - t) or linear base + t*direction.
class ScalarFamily {
 public:
  static ScalarFamily translation(TrigPolynomial base);
  static ScalarFamily linear(TrigPolynomial base, TrigPolynomial direction);

  TrigPolynomial at(double t) const;
  bool is_translation() const { return translation_; }
  const TrigPolynomial& base() const { return base_; }
  const TrigPolynomial& direction() const { return direction_; }

 private:
  TrigPolynomial base_;
  TrigPolynomial direction_;
  bool translation_ = true;
};

}  // namespace ergolab
