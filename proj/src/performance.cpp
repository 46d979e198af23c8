#include "ergolab/performance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TrigPolynomial::TrigPolynomial(double constant, std::vector<double> cos_coeffs,
                               std::vector<double> sin_coeffs)
    : constant_(constant), cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  trim();
}

void TrigPolynomial::trim() {
  const std::size_t m = std::max(cos_.size(), sin_.size());
  cos_.resize(m, 0.0);
  sin_.resize(m, 0.0);
  while (!cos_.empty() && cos_.back() == 0.0 && sin_.back() == 0.0) {
    cos_.pop_back();
    sin_.pop_back();
  }
}

TrigPolynomial TrigPolynomial::cosine(int k, double amplitude, double shift) {
  if (k < 1) throw std::invalid_argument("TrigPolynomial::cosine: harmonic must be >= 1");
  std::vector<double> a(k, 0.0), b(k, 0.0);
  a[k - 1] = amplitude * std::cos(kTwoPi * k * shift);
  b[k - 1] = amplitude * std::sin(kTwoPi * k * shift);
  return TrigPolynomial(0.0, std::move(a), std::move(b));
}

int TrigPolynomial::harmonics() const { return static_cast<int>(cos_.size()); }

double TrigPolynomial::eval(double x) const {
  double v = constant_;
  if (cos_.empty()) return v;
  const double s1 = std::sin(kTwoPi * x), c1 = std::cos(kTwoPi * x);
  double s = s1, c = c1;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    v += cos_[k] * c + sin_[k] * s;
    const double sn = s * c1 + c * s1;
    c = c * c1 - s * s1;
    s = sn;
  }
  return v;
}

double TrigPolynomial::deriv(double x) const {
  double v = 0.0;
  if (cos_.empty()) return v;
  const double s1 = std::sin(kTwoPi * x), c1 = std::cos(kTwoPi * x);
  double s = s1, c = c1;
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    v += w * (sin_[k] * c - cos_[k] * s);
    const double sn = s * c1 + c * s1;
    c = c * c1 - s * s1;
    s = sn;
  }
  return v;
}

TrigPolynomial TrigPolynomial::differentiated() const {
  std::vector<double> a(cos_.size()), b(sin_.size());
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double w = kTwoPi * static_cast<double>(k + 1);
    a[k] = w * sin_[k];
    b[k] = -w * cos_[k];
  }
  return TrigPolynomial(0.0, std::move(a), std::move(b));
}

double TrigPolynomial::lipschitz_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < cos_.size(); ++k)
    s += kTwoPi * static_cast<double>(k + 1) * (std::abs(cos_[k]) + std::abs(sin_[k]));
  return s;
}

double TrigPolynomial::oscillation_bound() const {
  double s = 0.0;
  for (std::size_t k = 0; k < cos_.size(); ++k) s += std::abs(cos_[k]) + std::abs(sin_[k]);
  return s;
}

double TrigPolynomial::weighted_norm(double rho) const {
  double s = std::abs(constant_);
  for (std::size_t k = 0; k < cos_.size(); ++k)
    s += (std::abs(cos_[k]) + std::abs(sin_[k])) * std::exp(rho * static_cast<double>(k + 1));
  return s;
}

TrigPolynomial TrigPolynomial::shifted(double t) const {
  // cos(2 pi k (x - t)) = cos(2 pi k t) cos(2 pi k x) + sin(2 pi k t) sin(2 pi k x)
  std::vector<double> a(cos_.size()), b(sin_.size());
  for (std::size_t k = 0; k < cos_.size(); ++k) {
    const double th = kTwoPi * static_cast<double>(k + 1) * t;
    const double c = std::cos(th), s = std::sin(th);
    a[k] = cos_[k] * c - sin_[k] * s;
    b[k] = cos_[k] * s + sin_[k] * c;
  }
  return TrigPolynomial(constant_, std::move(a), std::move(b));
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
  constant_ += other.constant_;
  const std::size_t m = std::max(cos_.size(), other.cos_.size());
  cos_.resize(m, 0.0);
  sin_.resize(m, 0.0);
  for (std::size_t k = 0; k < other.cos_.size(); ++k) {
    cos_[k] += other.cos_[k];
    sin_[k] += other.sin_[k];
  }
  trim();
  return *this;
}

TrigPolynomial operator*(double s, const TrigPolynomial& f) {
  TrigPolynomial out = f;
  out.constant_ *= s;
  for (double& a : out.cos_) a *= s;
  for (double& b : out.sin_) b *= s;
  out.trim();
  return out;
}

PerturbationBasis PerturbationBasis::make(std::vector<TrigPolynomial> directions, double rho,
                                          double declared_bound) {
  PerturbationBasis basis;
  basis.directions = std::move(directions);
  basis.rho = rho;
  for (const auto& phi : basis.directions) basis.norm_sum += phi.weighted_norm(rho);
  if (!(basis.norm_sum <= declared_bound))
    throw std::invalid_argument("PerturbationBasis: norm sum exceeds declared bound");
  return basis;
}

TrigPolynomial family_member(const TrigPolynomial& f0, const PerturbationBasis& basis,
                             std::span<const double> t) {
  if (t.size() != basis.size())
    throw LengthMismatch("family_member: " + std::to_string(t.size()) + " coefficients for " +
                         std::to_string(basis.size()) + " directions");
  TrigPolynomial out = f0;
  for (std::size_t n = 0; n < t.size(); ++n) {
    if (!(t[n] >= 0.0 && t[n] <= 1.0)) throw std::domain_error("family_member: t_n outside [0, 1]");
    out += t[n] * basis.directions[n];
  }
  return out;
}

TrigPolynomial locking_perturbation(std::span<const double> points) {
  if (points.empty()) throw std::invalid_argument("locking_perturbation: empty orbit");
  using cplx = std::complex<double>;
  // Coefficients of e^{2 pi i k x}, index k + m.
  std::vector<cplx> c{1.0};
  for (double p : points) {
    // sin^2(pi (x - p)) = 1/2 - e^{-2 pi i p}/4 e^{2 pi i x} - e^{2 pi i p}/4 e^{-2 pi i x}
    const cplx up = -0.25 * std::polar(1.0, -kTwoPi * p);
    const cplx down = std::conj(up);
    std::vector<cplx> next(c.size() + 2, 0.0);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j] += c[j] * down;
      next[j + 1] += c[j] * 0.5;
      next[j + 2] += c[j] * up;
    }
    c = std::move(next);
  }
  const std::size_t m = points.size();
  std::vector<double> a(m), b(m);
  for (std::size_t k = 1; k <= m; ++k) {
    const cplx ck = c[m + k];
    a[k - 1] = -2.0 * ck.real();
    b[k - 1] = 2.0 * ck.imag();
  }
  return TrigPolynomial(-c[m].real(), std::move(a), std::move(b));
}

ScalarFamily ScalarFamily::translation(TrigPolynomial base) {
  ScalarFamily f;
  f.base_ = std::move(base);
  f.translation_ = true;
  return f;
}

ScalarFamily ScalarFamily::linear(TrigPolynomial base, TrigPolynomial direction) {
  ScalarFamily f;
  f.base_ = std::move(base);
  f.direction_ = std::move(direction);
  f.translation_ = false;
  return f;
}

TrigPolynomial ScalarFamily::at(double t) const {
  if (translation_) return base_.shifted(t);
  return base_ + t * direction_;
}

}  // namespace ergolab
