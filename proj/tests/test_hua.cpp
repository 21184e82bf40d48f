#include <doctest.h>

#include <hartogs/hua.hpp>

#include <future>

#include "test_util.hpp"

using namespace hartogs;
using hartogs::testing::random_positive_rational;

namespace {

Polynomial linear_root(const Rational& root) { return Polynomial{-root, Rational(1)}; }

Polynomial product_of_roots(const std::vector<Rational>& roots, const Rational& scale) {
  Polynomial p = Polynomial::constant(scale);
  for (const auto& r : roots) p *= linear_root(r);
  return p;
}

CartanHartogs iv5_three_discs(int d0) {
  return CartanHartogs({domain_IV(5), ball(1), ball(1), ball(1)},
                       {Rational(1, 2), Rational(1), Rational(1, 3), Rational(1, 7)}, d0);
}

/// Test-only oracle: expand the epsilon formula as a polynomial in alpha by
/// multiplying out the raising factorials, instead of the coefficient
/// extraction the library uses. Entry q is the X-polynomial on alpha^q.
std::vector<Polynomial> epsilon_alpha_collection(const CartanHartogs& spec) {
  int d = spec.base_dim(), d0 = spec.fiber_dim, n = spec.total_dim();
  auto diffs = chi_tilde_differences(spec);
  Rational mu_prod = spec.mu_power_product();
  std::vector<Polynomial> by_alpha(static_cast<std::size_t>(n) + 1);
  Rational fact(1);
  for (int l = 0; l <= d; ++l) {
    if (l > 0) fact *= l;
    Rational w = diffs[static_cast<std::size_t>(l)] / (fact * mu_prod);
    if (w == 0) continue;
    Polynomial in_alpha = raising_factorial(Rational(-n), l + d0);
    for (int q = 0; q <= in_alpha.degree(); ++q)
      by_alpha[static_cast<std::size_t>(q)] +=
          Polynomial::monomial(d - l, w * in_alpha.coefficient(q));
  }
  return by_alpha;
}

CartanHartogs random_spec(std::mt19937_64& rng, int max_factors, int max_base_dim,
                          int min_base_dim = 1) {
  auto pool = enumerate_catalog(6);
  std::uniform_int_distribution<int> kdist(1, max_factors), d0dist(1, 3);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (;;) {
    int k = kdist(rng);
    std::vector<Domain> factors;
    std::vector<Rational> mu;
    int dim = 0;
    for (int i = 0; i < k; ++i) {
      Domain f = pool[pick(rng)];
      dim += f.dim;
      factors.push_back(f);
      mu.push_back(random_positive_rational(rng, 5, 7));
    }
    if (dim < min_base_dim || dim > max_base_dim) continue;
    return CartanHartogs(std::move(factors), std::move(mu), d0dist(rng));
  }
}

}  // namespace

TEST_SUITE_BEGIN("hua");

TEST_CASE("hua polynomial anchors") {
  Polynomial x = Polynomial::variable();
  CHECK(hua_chi(domain_III(2)) ==
        raising_factorial(Rational(1), 2) * (x + Polynomial{Rational(3, 2)}));
  CHECK(hua_chi(domain_V()) == raising_factorial(Rational(1), 11) * raising_factorial(Rational(4), 5));
  CHECK(hua_chi(domain_VI()) == raising_factorial(Rational(1), 17) *
                                    raising_factorial(Rational(5), 9) *
                                    raising_factorial(Rational(9), 1));
  for (int n = 1; n <= 8; ++n) CHECK(hua_chi(ball(n)) == raising_factorial(Rational(1), n));
  CHECK(hua_chi(domain_IV(5)) ==
        raising_factorial(Rational(1), 4) * (x + Polynomial{Rational(5, 2)}));
  CHECK(hua_chi(domain_II(6)) == raising_factorial(Rational(1), 9) *
                                     raising_factorial(Rational(3), 5) *
                                     raising_factorial(Rational(5), 1));
  CHECK(hua_chi(domain_II(7)) == raising_factorial(Rational(1), 11) *
                                     raising_factorial(Rational(3), 7) *
                                     raising_factorial(Rational(5), 3));
  CHECK(hua_chi(domain_III(4)) ==
        raising_factorial(Rational(1), 4) * raising_factorial(Rational(3, 2), 3) *
            raising_factorial(Rational(2), 2) * raising_factorial(Rational(5, 2), 1));
}

TEST_CASE("hua polynomial structure across the catalog") {
  for (const Domain& inv : enumerate_catalog(30)) {
    Polynomial chi = hua_chi(inv);
    CHECK(chi.degree() == inv.dim);
    CHECK(chi.leading_coefficient() == 1);
    // all roots negative half-integers
    for (const auto& [shift, len] : hua_chi_factors(inv)) {
      CHECK(denominator(shift) <= 2);
      CHECK(shift >= 1);
      for (int l = 0; l < len; ++l) CHECK(chi(-shift - l) == 0);
    }
  }
}

TEST_CASE("certificate polynomial of the type IV times three discs domain") {
  CartanHartogs spec = iv5_three_discs(2);
  std::vector<Rational> roots;
  for (int j = 1; j <= 8; ++j) roots.emplace_back(j);
  CHECK(chi_tilde(spec) == product_of_roots(roots, Rational(1, 2 * 2 * 2 * 2 * 2 * 3 * 7)));
}

TEST_CASE("certificate polynomial for single balls and a mixed pair") {
  for (int d = 1; d <= 6; ++d) {
    CartanHartogs spec({ball(d)}, {Rational(1)}, 1);
    std::vector<Rational> roots;
    for (int j = 1; j <= d; ++j) roots.emplace_back(j);
    CHECK(chi_tilde(spec) == product_of_roots(roots, Rational(1)));
  }
  CartanHartogs mixed({ball(1), domain_III(2)}, {Rational(1), Rational(1, 2)}, 1);
  CHECK(chi_tilde(mixed) ==
        product_of_roots({Rational(1), Rational(2), Rational(3), Rational(4)}, Rational(1, 8)));
}

TEST_CASE("chi_tilde leading coefficient and factor structure") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    CartanHartogs spec = random_spec(rng, 3, 8);
    Polynomial ct = chi_tilde(spec);
    CHECK(ct.degree() == spec.base_dim());
    CHECK(ct.leading_coefficient() == spec.mu_power_product());
    Polynomial direct = Polynomial::constant(Rational(1));
    for (std::size_t i = 0; i < spec.factors.size(); ++i)
      direct *= hua_chi(spec.factors[i])
                    .compose_affine(spec.mu[i], Rational(-spec.factors[i].genus));
    CHECK(ct == direct);
  }
}

TEST_CASE("difference values at d") {
  CartanHartogs spec = iv5_three_discs(2);
  auto diffs = chi_tilde_differences(spec);
  REQUIRE(diffs.size() == 9);
  for (int j = 0; j < 8; ++j) CHECK(diffs[static_cast<std::size_t>(j)] == 0);
  CHECK(diffs[8] == factorial(8) * spec.mu_power_product());

  CartanHartogs disc({ball(1)}, {Rational(1)}, 1);
  auto d2 = chi_tilde_differences(disc);
  CHECK(d2 == std::vector<Rational>{Rational(0), Rational(1)});

  // chi~ = (2x/3 - 1)^2 is symmetric about 3/2, so the first difference at 2
  // vanishes; non-balancedness is witnessed by the 0-th entry instead.
  CartanHartogs ke({ball(1), ball(1)}, {Rational(2, 3), Rational(2, 3)}, 1);
  auto d3 = chi_tilde_differences(ke);
  CHECK(d3[0] == Rational(1, 9));
  CHECK(d3[1] == 0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    CartanHartogs spec = random_spec(rng, 3, 8);
    auto dv = chi_tilde_differences(spec);
    CHECK(dv.back() == factorial(spec.base_dim()) * spec.mu_power_product());
  }
}

TEST_CASE("pochhammer alpha coefficients") {
  for (int n = 2; n <= 25; ++n) {
    auto c = pochhammer_alpha_coeffs(n, n);
    REQUIRE(static_cast<int>(c.size()) == n + 1);
    CHECK(c[static_cast<std::size_t>(n)] == 1);
    CHECK(c[static_cast<std::size_t>(n - 1)] == Rational(-n) * (n + 1) / 2);
    CHECK(c[static_cast<std::size_t>(n - 2)] == Rational(n - 1) * n * (n + 1) * (3 * n + 2) / 24);
  }
  // agrees with the generic raising-factorial expansion
  for (int n : {3, 7, 11}) {
    for (int m = 0; m <= 25; ++m) {
      Polynomial direct = raising_factorial(Rational(-n), m);
      auto c = pochhammer_alpha_coeffs(n, m);
      REQUIRE(static_cast<int>(c.size()) == m + 1);
      for (int j = 0; j <= m; ++j) CHECK(c[static_cast<std::size_t>(j)] == direct.coefficient(j));
    }
  }
}

TEST_CASE("epsilon expansion basics") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    CartanHartogs spec = random_spec(rng, 3, 8);
    EpsilonExpansion exp = epsilon_expansion(spec);
    int n = spec.total_dim(), d = spec.base_dim();
    REQUIRE(static_cast<int>(exp.a.size()) == n + 1);
    CHECK(exp.a[0] == Polynomial{Rational(1)});
    for (int j = 0; j <= n; ++j) CHECK(exp.a[static_cast<std::size_t>(j)].degree() <= std::min(j, d));
  }
}

TEST_CASE("epsilon expansion equals the alpha-collection oracle") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    CartanHartogs spec = random_spec(rng, 3, 8);
    EpsilonExpansion exp = epsilon_expansion(spec);
    auto by_alpha = epsilon_alpha_collection(spec);
    int n = spec.total_dim();
    for (int j = 0; j <= n; ++j)
      CHECK(exp.a[static_cast<std::size_t>(j)] == by_alpha[static_cast<std::size_t>(n - j)]);
  }
}

TEST_CASE("a1 and a2 closed forms match the generic extraction") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    CartanHartogs spec = random_spec(rng, 3, 8, 2);
    EpsilonExpansion exp = epsilon_expansion(spec);
    CHECK(exp.a[1] == a1_closed_form(spec));
    CHECK(exp.a[2] == a2_closed_form(spec));
  }
}

TEST_CASE("balanced spec has constant a1 and a2") {
  CartanHartogs spec = iv5_three_discs(1);  // d = 8, n = 9
  EpsilonExpansion exp = epsilon_expansion(spec);
  CHECK(exp.a[1] == Polynomial{Rational(-45)});  // -n(n+1)/2
  CHECK(exp.a[2] == Polynomial{Rational(870)});  // (n-1)n(n+1)(3n+2)/24
}

TEST_CASE("hyperbolic space expansion") {
  // B(d) with mu = 1 fibered by B(d0) is the ball B(n): epsilon is
  // (alpha-1)...(alpha-n), so a_j are the elementary symmetric values.
  CartanHartogs spec({ball(3)}, {Rational(1)}, 2);
  EpsilonExpansion exp = epsilon_expansion(spec);
  Polynomial expected = raising_factorial(Rational(-5), 5);  // in alpha
  for (int j = 0; j <= 5; ++j)
    CHECK(exp.a[static_cast<std::size_t>(j)] == Polynomial{expected.coefficient(5 - j)});
}

TEST_CASE("shifted chi top coefficients") {
  ShiftedChiTopCoeffs c = shifted_chi_top_coeffs(domain_III(2), Rational(1));
  CHECK(c.c0 == 1);
  CHECK(c.c1 == Rational(-9, 2));
  REQUIRE(c.c2.has_value());
  CHECK(*c.c2 == Rational(13, 2));

  ShiftedChiTopCoeffs disc = shifted_chi_top_coeffs(ball(1), Rational(1));
  CHECK(disc.c0 == 1);
  CHECK(disc.c1 == -1);
  CHECK_FALSE(disc.c2.has_value());
}

TEST_CASE("shifted chi top coefficients agree with direct expansion") {
  std::mt19937_64 rng(41);
  for (const Domain& inv : enumerate_catalog(30)) {
    Rational mu = random_positive_rational(rng, 6, 8);
    Polynomial shifted = hua_chi(inv).compose_affine(mu, Rational(-inv.genus));
    ShiftedChiTopCoeffs c = shifted_chi_top_coeffs(inv, mu);
    CHECK(shifted.coefficient(inv.dim) == c.c0);
    CHECK(shifted.coefficient(inv.dim - 1) == c.c1);
    if (inv.dim >= 2) {
      REQUIRE(c.c2.has_value());
      CHECK(shifted.coefficient(inv.dim - 2) == *c.c2);
    }
  }
}

TEST_CASE("sum of squared roots matches the actual roots") {
  for (const Domain& inv : enumerate_catalog(30)) {
    Rational direct(0);
    for (const auto& [shift, len] : hua_chi_factors(inv))
      for (int l = 0; l < len; ++l) {
        Rational root = Rational(inv.genus) - shift - l;  // root of chi(x - p)
        direct += root * root;
      }
    CHECK(direct == sum_squared_roots(inv));
  }
}

TEST_CASE("curvature scalars") {
  CurvatureScalars disc = curvature_scalars(ball(1));
  CHECK(disc.R == 0);
  CHECK(disc.S == 0);
  CHECK(s_lower_gap(domain_V()) == -11736);
  CHECK(s_lower_gap(domain_VI()) == -76599);
}

TEST_CASE("lower-gap closed forms per family") {
  for (const Domain& inv : enumerate_catalog(40)) {
    Rational got = s_lower_gap(inv);
    switch (inv.family) {
      case Family::I: {
        Rational m(inv.par_m), n(inv.par_n);
        CHECK(got == Rational(-1, 2) * m * n * (4 * m * m * n * n - 2 * m * m - 2 * n * n + m * n + 1));
        break;
      }
      case Family::II: {
        if (inv.par_n % 2 == 0) {
          Rational n(inv.par_n / 2);
          CHECK(got == -n * (32 * n * n * n * n * n - 80 * n * n * n * n + 60 * n * n * n -
                             4 * n * n - 9 * n + 2));
        } else {
          Rational n((inv.par_n - 1) / 2);
          CHECK(got == -n * (2 * n + 1) * (16 * n * n * n * n - 10 * n * n + 3 * n + 1));
        }
        break;
      }
      case Family::III: {
        Rational n(inv.par_n);
        CHECK(got == Rational(-1, 16) * n * (n + 1) *
                         (2 * n * n * n * n + 8 * n * n * n + 7 * n * n - 5 * n - 4));
        break;
      }
      case Family::IV: {
        Rational n(inv.par_n);
        CHECK(got == Rational(-1, 4) * n * (8 * n * n - 5 * n - 2));
        break;
      }
      default: break;  // V, VI pinned above
    }
  }
  CHECK(s_lower_gap(domain_IV(5)) == Rational(-865, 4));
}

TEST_CASE("curvature ratio bounds hold across the catalog") {
  for (const Domain& inv : enumerate_catalog(60)) {
    Rational S = curvature_scalars(inv).S;
    Rational d(inv.dim);
    CHECK(S > Rational(1, 2) - Rational(8) / (3 * (4 * d + 1)));
    CHECK(S <= Rational(1, 2) - Rational(1) / (2 * d));
    CHECK(s_lower_gap(inv) < 0);
  }
  // the disc attains the upper bound
  CHECK(curvature_scalars(ball(1)).S == Rational(1, 2) - Rational(1, 2));
}

TEST_CASE("two-factor difference identities") {
  CartanHartogs bidisc({ball(1), ball(1)}, {Rational(1), Rational(1)}, 1);
  TwoFactorIdentities id = two_factor_identities(bidisc);
  CHECK(id.first_direct == 1);
  CHECK(id.first_closed == 1);
  CHECK(id.second_direct == id.second_closed);

  CartanHartogs halved({ball(1), ball(1)}, {Rational(1), Rational(1, 2)}, 1);
  CHECK(two_factor_identities(halved).first_closed == 0);
  CHECK(two_factor_identities(halved).first_direct == 0);

  std::mt19937_64 rng(43);
  auto pool = enumerate_catalog(8);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 50; ++trial) {
    CartanHartogs spec({pool[pick(rng)], pool[pick(rng)]},
                       {random_positive_rational(rng, 5, 7), random_positive_rational(rng, 5, 7)},
                       1);
    TwoFactorIdentities tf = two_factor_identities(spec);
    CHECK(tf.first_direct == tf.first_closed);
    CHECK(tf.second_direct == tf.second_closed);
  }

  CartanHartogs single({ball(2)}, {Rational(1)}, 1);
  CHECK_THROWS_AS(two_factor_identities(single), std::invalid_argument);
}

TEST_CASE("hua cache serves concurrent readers") {
  auto catalog = enumerate_catalog(20);
  std::vector<Polynomial> expected;
  for (const Domain& inv : catalog) expected.push_back(detail::build_hua_chi(inv));
  std::vector<std::future<bool>> workers;
  for (int t = 0; t < 8; ++t)
    workers.push_back(std::async(std::launch::async, [&] {
      bool ok = true;
      for (std::size_t i = 0; i < catalog.size(); ++i) ok = ok && hua_chi(catalog[i]) == expected[i];
      return ok;
    }));
  for (auto& w : workers) CHECK(w.get());
}

TEST_CASE("spec validation and derived quantities") {
  CHECK_THROWS_AS(CartanHartogs({}, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(CartanHartogs({ball(1)}, {Rational(0)}, 1), std::invalid_argument);
  CHECK_THROWS_AS(CartanHartogs({ball(1)}, {Rational(-1, 2)}, 1), std::invalid_argument);
  CHECK_THROWS_AS(CartanHartogs({ball(1)}, {Rational(1), Rational(1)}, 1), std::invalid_argument);
  CHECK_THROWS_AS(CartanHartogs({ball(1)}, {Rational(1)}, 0), std::invalid_argument);

  CartanHartogs spec = iv5_three_discs(2);
  CHECK(spec.base_dim() == 8);
  CHECK(spec.total_dim() == 10);
  CHECK(spec.mu_power_product() == Rational(1, 672));
  CHECK(spec.alpha_threshold() == 10);  // n dominates (p_i - 1)/mu_i = 8, 1, 3, 7
}

TEST_SUITE_END();
