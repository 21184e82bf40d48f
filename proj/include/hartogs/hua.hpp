#pragma once

#include <hartogs/domain.hpp>
#include <hartogs/polynomial.hpp>

#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <tuple>
#include <vector>

namespace hartogs {

/// The factored form of the Hua polynomial: chi(s) is the product over
/// j = 1..r of the raising factorials (s + 1 + (j-1)a/2)_(1+b+(r-j)a).
/// Returned as (shift, length) pairs; the degrees sum to dim.
inline std::vector<std::pair<Rational, int>> hua_chi_factors(const Domain& inv) {
  std::vector<std::pair<Rational, int>> factors;
  for (int j = 1; j <= inv.rank; ++j)
    factors.emplace_back(Rational(1) + Rational(j - 1) * inv.mult_a / 2,
                         1 + inv.mult_b + (inv.rank - j) * inv.mult_a);
  return factors;
}

namespace detail {
inline Polynomial build_hua_chi(const Domain& inv) {
  Polynomial chi = Polynomial::constant(Rational(1));
  for (const auto& [shift, len] : hua_chi_factors(inv)) chi *= raising_factorial(shift, len);
  return chi;
}
}  // namespace detail

/// The Hua polynomial of a domain: monic of degree dim, with all roots
/// negative half-integers. Memoized per (family, parameters); the cache is
/// safe for concurrent readers.
inline Polynomial hua_chi(const Domain& inv) {
  using Key = std::tuple<Family, int, int>;
  static std::shared_mutex mutex;
  static std::map<Key, Polynomial> cache;
  Key key{inv.family, inv.par_m, inv.par_n};
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Polynomial chi = detail::build_hua_chi(inv);
  std::unique_lock lock(mutex);
  return cache.emplace(key, std::move(chi)).first->second;
}

/// A generalized Cartan-Hartogs domain: a Hartogs domain with fiber
/// dimension d0 over a product of bounded symmetric domains, the fiber
/// radius being the product of generic norms raised to the exponents mu.
struct CartanHartogs {
  std::vector<Domain> factors;
  std::vector<Rational> mu;
  int fiber_dim = 1;

  CartanHartogs(std::vector<Domain> factors_, std::vector<Rational> mu_, int d0)
      : factors(std::move(factors_)), mu(std::move(mu_)), fiber_dim(d0) {
    if (factors.empty()) throw std::invalid_argument("CartanHartogs: needs at least one factor");
    if (factors.size() != mu.size())
      throw std::invalid_argument("CartanHartogs: factor and exponent counts differ");
    for (const auto& m : mu)
      if (m <= 0) throw std::invalid_argument("CartanHartogs: exponents must be positive");
    if (fiber_dim < 1) throw std::invalid_argument("CartanHartogs: fiber dimension must be >= 1");
  }

  int factor_count() const { return static_cast<int>(factors.size()); }

  /// d = sum of factor dimensions.
  int base_dim() const {
    int d = 0;
    for (const auto& f : factors) d += f.dim;
    return d;
  }

  /// n = d + d0, the dimension of the Hartogs domain itself.
  int total_dim() const { return base_dim() + fiber_dim; }

  /// prod mu_i^{d_i}, the leading coefficient of the certificate polynomial.
  Rational mu_power_product() const {
    Rational prod(1);
    for (std::size_t i = 0; i < factors.size(); ++i) prod *= pow(mu[i], factors[i].dim);
    return prod;
  }

  /// max{n, (p_i - 1)/mu_i}: the weighted Bergman space is nontrivial
  /// exactly for alpha above this value.
  Rational alpha_threshold() const {
    Rational best(total_dim());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      Rational cand = Rational(factors[i].genus - 1) / mu[i];
      if (cand > best) best = cand;
    }
    return best;
  }

  std::string name() const {
    std::string s = "(";
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) s += " x ";
      s += factors[i].name();
    }
    s += ")^B(" + std::to_string(fiber_dim) + ") mu=(";
    for (std::size_t i = 0; i < mu.size(); ++i) {
      if (i) s += ",";
      s += to_string(mu[i]);
    }
    return s + ")";
  }
};

/// The certificate polynomial: product over factors of chi_i(mu_i x - p_i).
/// Degree d with leading coefficient prod mu_i^{d_i}.
inline Polynomial chi_tilde(const CartanHartogs& spec) {
  Polynomial prod = Polynomial::constant(Rational(1));
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    prod *= hua_chi(spec.factors[i]).compose_affine(spec.mu[i], Rational(-spec.factors[i].genus));
  return prod;
}

/// [D^0 chi~(d), ..., D^d chi~(d)]: all difference values at x = d. The last
/// entry is always d! times the leading coefficient.
inline std::vector<Rational> chi_tilde_differences(const CartanHartogs& spec) {
  Polynomial cur = chi_tilde(spec);
  int d = spec.base_dim();
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    values.push_back(cur(Rational(d)));
    cur = finite_difference(cur, 1);
  }
  return values;
}

/// Coefficients of (alpha - n)_m as a polynomial in alpha, low power first
/// (length m + 1, leading entry 1). Built by the product recurrence, so the
/// raising_factorial expansion stays available as an independent check.
inline std::vector<Rational> pochhammer_alpha_coeffs(int n, int m) {
  if (m < 0) throw std::invalid_argument("pochhammer_alpha_coeffs: negative length");
  std::vector<Rational> c{Rational(1)};
  for (int i = 0; i < m; ++i) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    Rational root(i - n);
    for (std::size_t j = 0; j < c.size(); ++j) {
      next[j + 1] += c[j];
      next[j] += root * c[j];
    }
    c = std::move(next);
  }
  return c;
}

/// The expansion of the epsilon function in powers of alpha: coefficient j
/// multiplies alpha^(n-j) and is a polynomial in the scalar
/// X = 1 - ||w||^2 / prod N^mu of degree at most min(j, d). a[0] is 1.
struct EpsilonExpansion {
  int total_dim = 0;
  std::vector<Polynomial> a;  // a[j], j = 0..total_dim
};

inline EpsilonExpansion epsilon_expansion_from_differences(const CartanHartogs& spec,
                                                           const std::vector<Rational>& diffs) {
  int d = spec.base_dim(), d0 = spec.fiber_dim, n = spec.total_dim();
  Rational mu_prod = spec.mu_power_product();
  // weight[l] = D^l chi~(d) / (l! * prod mu^{d_i})
  std::vector<Rational> weight(static_cast<std::size_t>(d) + 1);
  Rational fact(1);
  for (int l = 0; l <= d; ++l) {
    if (l > 0) fact *= l;
    weight[static_cast<std::size_t>(l)] = diffs[static_cast<std::size_t>(l)] / (fact * mu_prod);
  }
  std::vector<std::vector<Rational>> poch(static_cast<std::size_t>(d) + 1);
  for (int l = 0; l <= d; ++l) poch[static_cast<std::size_t>(l)] = pochhammer_alpha_coeffs(n, d0 + l);
  auto poch_at = [&](int l, int power) -> Rational {
    const auto& row = poch[static_cast<std::size_t>(l)];
    if (power < 0 || power >= static_cast<int>(row.size())) return Rational(0);
    return row[static_cast<std::size_t>(power)];
  };
  EpsilonExpansion exp;
  exp.total_dim = n;
  exp.a.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(std::min(j, d)) + 1, Rational(0));
    for (int l = std::max(d - j, 0); l <= d; ++l)
      coeffs[static_cast<std::size_t>(d - l)] += poch_at(l, n - j) * weight[static_cast<std::size_t>(l)];
    exp.a.emplace_back(std::move(coeffs));
  }
  return exp;
}

inline EpsilonExpansion epsilon_expansion(const CartanHartogs& spec) {
  return epsilon_expansion_from_differences(spec, chi_tilde_differences(spec));
}

/// Closed form of a1 as a polynomial in X (valid for d >= 1).
inline Polynomial a1_closed_form(const CartanHartogs& spec) {
  int d = spec.base_dim(), n = spec.total_dim();
  if (d < 1) throw std::invalid_argument("a1_closed_form: needs base dimension >= 1");
  auto diffs = chi_tilde_differences(spec);
  Rational slope = diffs[static_cast<std::size_t>(d - 1)] / (factorial(d - 1) * spec.mu_power_product());
  return Polynomial{Rational(-n) * (n + 1) / 2, slope};
}

/// Closed form of a2 as a polynomial in X (valid for d >= 2).
inline Polynomial a2_closed_form(const CartanHartogs& spec) {
  int d = spec.base_dim(), n = spec.total_dim();
  if (d < 2) throw std::invalid_argument("a2_closed_form: needs base dimension >= 2");
  auto diffs = chi_tilde_differences(spec);
  Rational mu_prod = spec.mu_power_product();
  Rational quad = diffs[static_cast<std::size_t>(d - 2)] / (factorial(d - 2) * mu_prod);
  Rational slope = diffs[static_cast<std::size_t>(d - 1)] / (factorial(d - 1) * mu_prod);
  Rational lin = -slope * (Rational(n) * (n + 1) / 2 - 1);
  Rational cst = Rational(n - 1) * n * (n + 1) * (3 * n + 2) / 24;
  return Polynomial{cst, lin, quad};
}

/// Top three coefficients of chi(mu*x - p): c0 = mu^d, c1 = -mu^(d-1) d p / 2
/// and, when d >= 2, c2 = mu^(d-2) R / 2.
struct ShiftedChiTopCoeffs {
  Rational c0;
  Rational c1;
  std::optional<Rational> c2;
};

/// Sum of the squares of the roots of chi(x - p), in closed form from the
/// invariants.
inline Rational sum_squared_roots(const Domain& inv) {
  Rational r(inv.rank), a(inv.mult_a), p(inv.genus);
  return r * (p - 1) * p * (2 * p - 1) / 6 - r * (r - 1) * a * (3 * p * p - 3 * p + 1) / 12 +
         (r - 1) * r * (2 * r - 1) * a * a * (p - 1) / 24 - r * r * (r - 1) * (r - 1) * a * a * a / 48;
}

inline Rational curvature_R(const Domain& inv) {
  Rational d(inv.dim), p(inv.genus);
  return d * d * p * p / 4 - sum_squared_roots(inv);
}

/// R and the normalized ratio S = 2R/(d^2 p^2). S always lies in
/// (1/2 - 8/(3(4d+1)), 1/2 - 1/(2d)].
struct CurvatureScalars {
  Rational R;
  Rational S;
};

inline CurvatureScalars curvature_scalars(const Domain& inv) {
  Rational R = curvature_R(inv);
  Rational d(inv.dim), p(inv.genus);
  return {R, 2 * R / (d * d * p * p)};
}

/// 3(4d+1) * (sum of squared roots) - 4 d^2 p^2. Strictly negative for every
/// catalog domain; negativity certifies the strict lower bound on S.
inline Rational s_lower_gap(const Domain& inv) {
  Rational d(inv.dim), p(inv.genus);
  return 3 * (4 * d + 1) * sum_squared_roots(inv) - 4 * d * d * p * p;
}

inline ShiftedChiTopCoeffs shifted_chi_top_coeffs(const Domain& inv, const Rational& mu) {
  ShiftedChiTopCoeffs c;
  c.c0 = pow(mu, inv.dim);
  c.c1 = -pow(mu, inv.dim - 1) * inv.dim * inv.genus / 2;
  if (inv.dim >= 2) c.c2 = pow(mu, inv.dim - 2) * curvature_R(inv) / 2;
  return c;
}

/// Both sides of the two-factor identities expressing the first and second
/// normalized differences of chi~ at d through the invariants. Exact
/// The two entries of each pair agree identically; tests assert it.
struct TwoFactorIdentities {
  Rational first_direct, first_closed;
  Rational second_direct, second_closed;
};

inline TwoFactorIdentities two_factor_identities(const CartanHartogs& spec) {
  if (spec.factor_count() != 2)
    throw std::invalid_argument("two_factor_identities: exactly two factors required");
  const Domain& f1 = spec.factors[0];
  const Domain& f2 = spec.factors[1];
  const Rational& mu1 = spec.mu[0];
  const Rational& mu2 = spec.mu[1];
  int d = spec.base_dim();
  Rational mu_prod = spec.mu_power_product();
  auto diffs = chi_tilde_differences(spec);

  TwoFactorIdentities id;
  id.first_direct = diffs[static_cast<std::size_t>(d - 1)] / (factorial(d - 1) * mu_prod);
  id.second_direct = diffs[static_cast<std::size_t>(d - 2)] / (factorial(d - 2) * mu_prod);

  Rational weighted = Rational(f1.dim) * f1.genus / mu1 + Rational(f2.dim) * f2.genus / mu2;
  id.first_closed = (Rational(d) * (d + 1) - weighted) / 2;
  id.second_closed = (Rational(d - 1) * d * (d + 1) * (3 * d + 10) / 6 -
                      Rational(d - 1) * (d + 2) * weighted + 2 * curvature_R(f1) / (mu1 * mu1) +
                      Rational(f1.dim) * f2.dim * f1.genus * f2.genus / (mu1 * mu2) +
                      2 * curvature_R(f2) / (mu2 * mu2)) /
                     4;
  return id;
}

}  // namespace hartogs
