#include <doctest.h>

#include <hartogs/domain.hpp>

using namespace hartogs;

TEST_SUITE_BEGIN("domain");

TEST_CASE("invariant tables per family") {
  for (int n = 1; n <= 6; ++n) {
    Domain b = ball(n);
    CHECK(b.rank == 1);
    CHECK(b.mult_a == 2);
    CHECK(b.mult_b == n - 1);
    CHECK(b.dim == n);
    CHECK(b.genus == n + 1);
  }
  Domain v = domain_V();
  CHECK(v.rank == 2);
  CHECK(v.mult_a == 6);
  CHECK(v.mult_b == 4);
  CHECK(v.dim == 16);
  CHECK(v.genus == 12);

  Domain iii2 = domain_III(2);
  CHECK(iii2.rank == 2);
  CHECK(iii2.mult_a == 1);
  CHECK(iii2.mult_b == 0);
  CHECK(iii2.dim == 3);
  CHECK(iii2.genus == 3);

  Domain ii7 = domain_II(7);
  CHECK(ii7.rank == 3);
  CHECK(ii7.mult_a == 4);
  CHECK(ii7.mult_b == 2);
  CHECK(ii7.dim == 21);
  CHECK(ii7.genus == 12);

  Domain ii6 = domain_II(6);
  CHECK(ii6.rank == 3);
  CHECK(ii6.mult_b == 0);
  CHECK(ii6.genus == 10);

  Domain vi = domain_VI();
  CHECK(vi.rank == 3);
  CHECK(vi.mult_a == 8);
  CHECK(vi.dim == 27);
  CHECK(vi.genus == 18);

  Domain iv5 = domain_IV(5);
  CHECK(iv5.rank == 2);
  CHECK(iv5.mult_a == 3);
  CHECK(iv5.dim == 5);
  CHECK(iv5.genus == 5);
}

TEST_CASE("constraint violations are rejected with a diagnostic") {
  CHECK_THROWS_WITH_AS(domain_I(3, 2), "type I requires 1 <= m <= n", std::invalid_argument);
  CHECK_THROWS_AS(domain_I(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(domain_II(4), std::invalid_argument);
  CHECK_THROWS_AS(domain_III(1), std::invalid_argument);
  CHECK_THROWS_AS(domain_IV(4), std::invalid_argument);
  CHECK_THROWS_AS(ball(0), std::invalid_argument);
}

TEST_CASE("validate_invariants") {
  CHECK(validate_invariants(domain_VI()));
  CHECK(validate_invariants(domain_II(7)));
  Domain tampered = domain_V();
  tampered.dim += 1;
  CHECK_FALSE(validate_invariants(tampered));
  tampered = domain_III(4);
  tampered.genus -= 1;
  CHECK_FALSE(validate_invariants(tampered));
}

TEST_CASE("catalog enumeration") {
  auto only_disc = enumerate_catalog(1);
  REQUIRE(only_disc.size() == 1);
  CHECK(only_disc[0] == ball(1));

  auto small = enumerate_catalog(3);
  REQUIRE(small.size() == 4);
  CHECK(small[0] == ball(1));
  CHECK(small[1] == ball(2));
  CHECK(small[2] == ball(3));
  CHECK(small[3] == domain_III(2));

  auto with_v = enumerate_catalog(16);
  CHECK(std::count(with_v.begin(), with_v.end(), domain_V()) == 1);
  CHECK(std::count(with_v.begin(), with_v.end(), domain_VI()) == 0);
  auto with_vi = enumerate_catalog(27);
  CHECK(std::count(with_vi.begin(), with_vi.end(), domain_VI()) == 1);
}

TEST_CASE("every catalog entry validates and excludes aliases") {
  for (const Domain& inv : enumerate_catalog(60)) {
    CHECK(validate_invariants(inv));
    if (inv.family == Family::II) CHECK(inv.par_n >= 5);
    if (inv.family == Family::IV) CHECK(inv.par_n >= 5);
    if (inv.family == Family::III) CHECK(inv.par_n >= 2);
    if (inv.family == Family::I) {
      // closed forms, independent of the rank/multiplicity relations
      CHECK(inv.dim == inv.par_m * inv.par_n);
      CHECK(inv.genus == inv.par_m + inv.par_n);
    }
  }
}

TEST_CASE("spec string parsing") {
  CHECK(parse_domain("I(2,3)") == domain_I(2, 3));
  CHECK(parse_domain(" b( 4 ) ") == ball(4));
  CHECK(parse_domain("B(4)") == domain_I(1, 4));
  CHECK(parse_domain("iii(2)") == domain_III(2));
  CHECK(parse_domain("II(6)") == domain_II(6));
  CHECK(parse_domain("iv(9)") == domain_IV(9));
  CHECK(parse_domain("v") == domain_V());
  CHECK(parse_domain("VI") == domain_VI());
  CHECK_THROWS_AS(parse_domain("I(3,2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("VII"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("B()"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("B(2,3)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain(""), std::invalid_argument);
}

TEST_CASE("names round-trip through the parser") {
  for (const Domain& inv : enumerate_catalog(40)) CHECK(parse_domain(inv.name()) == inv);
}

TEST_SUITE_END();
