#pragma once

#include <hartogs/rational.hpp>

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

namespace hartogs {

/// Dense univariate polynomial over Rational. Coefficients are stored lowest
/// degree first; the representation is kept normalized (no trailing zeros),
/// so the empty vector is the zero polynomial and back() is the leading
/// coefficient otherwise. All arithmetic is exact.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<Rational> coeffs) : coeffs_(coeffs) { normalize(); }
  explicit Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  static Polynomial constant(Rational c) {
    Polynomial p;
    if (c != 0) p.coeffs_.push_back(std::move(c));
    return p;
  }
  static Polynomial variable() { return Polynomial{Rational(0), Rational(1)}; }
  static Polynomial monomial(int power, Rational coeff = Rational(1)) {
    Polynomial p;
    if (coeff != 0) {
      p.coeffs_.assign(static_cast<std::size_t>(power) + 1, Rational(0));
      p.coeffs_.back() = std::move(coeff);
    }
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Coefficient of x^power; zero beyond the degree.
  Rational coefficient(int power) const {
    if (power < 0 || power >= static_cast<int>(coeffs_.size())) return Rational(0);
    return coeffs_[static_cast<std::size_t>(power)];
  }

  const Rational& leading_coefficient() const {
    if (coeffs_.empty()) throw std::logic_error("leading_coefficient of zero polynomial");
    return coeffs_.back();
  }

  bool operator==(const Polynomial& other) const = default;

  /// Exact Horner evaluation.
  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  double eval_double(double x) const {
    double acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + to_double(*it);
    return acc;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& other) {
    if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
    normalize();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& other) { return *this += -other; }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(prod));
  }
  Polynomial& operator*=(const Polynomial& other) { return *this = *this * other; }

  friend Polynomial operator*(const Rational& s, const Polynomial& p) {
    Polynomial r = p;
    for (auto& c : r.coeffs_) c *= s;
    r.normalize();
    return r;
  }
  friend Polynomial operator*(const Polynomial& p, const Rational& s) { return s * p; }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * Rational(static_cast<int>(i));
    return Polynomial(std::move(d));
  }

  /// Returns q(x) = p(scale*x + offset), exactly.
  Polynomial compose_affine(const Rational& scale, const Rational& offset) const {
    Polynomial inner{offset, scale};
    Polynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
      acc = acc * inner + Polynomial::constant(*it);
    return acc;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (int i = degree(); i >= 0; --i) {
      const Rational& c = coeffs_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      Rational mag = c < 0 ? Rational(-c) : c;
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      bool unit = (mag == 1) && i > 0;
      if (!unit) out += to_string(mag);
      if (i > 0) {
        if (!unit) out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

/// (x + shift)(x + shift + 1) ... (x + shift + count - 1); the empty product
/// (count = 0) is the constant 1. Monic of degree count.
inline Polynomial raising_factorial(const Rational& shift, int count) {
  if (count < 0) throw std::invalid_argument("raising_factorial: negative count");
  Polynomial acc = Polynomial::constant(Rational(1));
  for (int i = 0; i < count; ++i) acc *= Polynomial{shift + i, Rational(1)};
  return acc;
}

/// The difference operator D f(x) = f(x) - f(x-1), applied `order` times.
/// Equals the binomial sum over f(x-l); degree drops by one per application.
inline Polynomial finite_difference(const Polynomial& p, int order) {
  if (order < 0) throw std::invalid_argument("finite_difference: negative order");
  Polynomial acc = p;
  for (int i = 0; i < order && !acc.is_zero(); ++i) acc -= acc.compose_affine(Rational(1), Rational(-1));
  return acc;
}

/// Quotient and remainder with deg(rem) < deg(divisor).
inline std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num, const Polynomial& div) {
  if (div.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
  std::vector<Rational> rem(num.coefficients());
  int dn = num.degree(), dd = div.degree();
  if (dn < dd) return {Polynomial{}, num};
  std::vector<Rational> quot(static_cast<std::size_t>(dn - dd) + 1, Rational(0));
  const Rational& lead = div.leading_coefficient();
  for (int k = dn - dd; k >= 0; --k) {
    Rational q = rem[static_cast<std::size_t>(k + dd)] / lead;
    quot[static_cast<std::size_t>(k)] = q;
    if (q == 0) continue;
    for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= q * div.coefficient(j);
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

/// Monic gcd over the rationals (Euclidean algorithm).
inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = poly_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading_coefficient());
}

/// True iff p has no repeated root, decided by gcd(p, p') being constant.
inline bool is_squarefree(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("is_squarefree: zero polynomial");
  if (p.degree() == 0) return true;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

}  // namespace hartogs
