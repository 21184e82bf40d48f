#include <hartogs/geometry.hpp>
#include <hartogs/report.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

using namespace hartogs;

namespace {

std::vector<std::string> split_top_level(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

CartanHartogs parse_spec(const std::string& factors_text, const std::string& mu_text, int d0) {
  std::vector<Domain> factors;
  for (const auto& part : split_top_level(factors_text)) factors.push_back(parse_domain(part));
  std::vector<Rational> mu;
  for (const auto& part : split_top_level(mu_text)) mu.push_back(parse_rational(part));
  return CartanHartogs(std::move(factors), std::move(mu), d0);
}

std::string chi_linear_factors_string(const Domain& inv) {
  std::string out;
  for (const auto& [shift, len] : hua_chi_factors(inv))
    for (int l = 0; l < len; ++l) {
      Rational s = shift + l;
      out += "(s+" + to_string(s) + ")";
    }
  return out;
}

std::string chi_pochhammer_string(const Domain& inv) {
  std::string out;
  for (const auto& [shift, len] : hua_chi_factors(inv)) {
    if (!out.empty()) out += " ";
    out += "(s+" + to_string(shift) + ")_" + std::to_string(len);
  }
  return out;
}

double relative_spread(const std::vector<double>& vals) {
  double lo = vals[0], hi = vals[0], sum = 0;
  for (double v : vals) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    sum += v;
  }
  if (hi == lo) return 0;
  return (hi - lo) / std::abs(sum / static_cast<double>(vals.size()));
}

int finish(const JobReport& rep, bool as_json) {
  if (as_json)
    std::cout << rep.to_json().dump(2) << "\n";
  else
    rep.print_table(std::cout);
  return rep.all_checks_pass() ? 0 : 1;
}

JobReport run_domain(const std::string& spec_text) {
  Domain inv = parse_domain(spec_text);
  JobReport rep;
  rep.command = "domain";
  rep.inputs = json{{"spec", spec_text}};
  rep.result = domain_to_json(inv);
  rep.result["chi_factored"] = chi_linear_factors_string(inv);
  rep.result["chi_pochhammer"] = chi_pochhammer_string(inv);
  rep.result["chi"] = polynomial_to_json(hua_chi(inv));
  bool ok = validate_invariants(inv);
  rep.checks.push_back(exact_check("dimension-genus relations", ok, ok ? "hold" : "violated"));
  return rep;
}

JobReport run_balanced(const std::string& factors_text, const std::string& mu_text, int d0) {
  CartanHartogs spec = parse_spec(factors_text, mu_text, d0);
  BalancedCertificate cert = certify_balanced(spec);
  JobReport rep;
  rep.command = "balanced";
  rep.inputs = spec_to_json(spec);
  rep.result = json{{"balanced", cert.balanced},
                    {"alpha_threshold", to_string(cert.alpha_threshold)},
                    {"kahler_einstein", kahler_einstein(spec)},
                    {"lhs", polynomial_to_json(cert.lhs)},
                    {"rhs", polynomial_to_json(cert.rhs)}};
  if (cert.first_mismatch) rep.result["first_mismatch"] = *cert.first_mismatch;
  if (cert.balanced) {
    bool factors_ok = true;
    for (const Domain& f : spec.factors) factors_ok = factors_ok && allowed_factor(f);
    rep.checks.push_back(exact_check("balanced implies allowed factors", factors_ok,
                                     factors_ok ? "consistent" : "inconsistent"));
  }
  return rep;
}

JobReport run_classify(int d_max, int denom_max, unsigned workers) {
  auto hits = classify_k2(d_max, denom_max, workers);
  JobReport rep;
  rep.command = "classify";
  rep.inputs = json{{"dmax", d_max}, {"denom_max", denom_max}};
  json list = json::array();
  bool all_allowed = true;
  for (const auto& hit : hits) {
    list.push_back(json{{"factors", {hit.first.name(), hit.second.name()}},
                        {"mu", {to_string(hit.mu_first), to_string(hit.mu_second)}}});
    all_allowed = all_allowed && allowed_factor(hit.first) && allowed_factor(hit.second);
  }
  rep.result = json{{"count", hits.size()}, {"balanced", list}};
  rep.checks.push_back(exact_check("hits use allowed factors only", all_allowed,
                                   std::to_string(hits.size()) + " hits"));
  return rep;
}

JobReport run_a2solve(const std::string& spec1, const std::string& spec2) {
  Domain f1 = parse_domain(spec1), f2 = parse_domain(spec2);
  A2Report a2 = solve_a2_constant(f1, f2);
  JobReport rep;
  rep.command = "a2solve";
  rep.inputs = json{{"factors", {domain_to_json(f1), domain_to_json(f2)}}};
  json sols = json::array();
  bool any_positive = false;
  double worst_linear = 0, worst_quadratic = 0, worst_sum = 0;
  for (const auto& sol : a2.solutions) {
    json s{{"mu1", sol.mu1},
           {"mu2", sol.mu2},
           {"x1", sol.x1},
           {"x2", sol.x2},
           {"branch", sol.branch == 0 ? "+sqrt" : "-sqrt"},
           {"residual_linear", sol.residual_linear},
           {"residual_quadratic", sol.residual_quadratic}};
    if (sol.exact_mu)
      s["exact_mu"] = {to_string(sol.exact_mu->first), to_string(sol.exact_mu->second)};
    sols.push_back(s);
    any_positive = any_positive || (sol.mu1 > 0 && sol.mu2 > 0);
    worst_linear = std::max(worst_linear, std::abs(sol.residual_linear));
    worst_quadratic = std::max(worst_quadratic, std::abs(sol.residual_quadratic));
    worst_sum = std::max(worst_sum, std::abs(sol.x1 + sol.x2 - 1));
  }
  rep.result = json{{"A", to_string(a2.A)},
                    {"B", to_string(a2.B)},
                    {"S1", to_string(a2.S1)},
                    {"S2", to_string(a2.S2)},
                    {"discriminant", to_string(a2.discriminant)},
                    {"solutions", sols}};
  rep.checks.push_back(exact_check("discriminant nonnegative", a2.discriminant >= 0,
                                   to_string(a2.discriminant)));
  rep.checks.push_back(exact_check("solvability bounds", solvability_bounds_hold(f1, f2),
                                   "S1+S2 vs 2B/A^2"));
  rep.checks.push_back(
      exact_check("positive solution exists", any_positive, std::to_string(a2.solutions.size()) + " solutions"));
  rep.checks.push_back(bounded_check("max |linear residual|", worst_linear, 1e-9));
  rep.checks.push_back(bounded_check("max |quadratic residual|", worst_quadratic, 1e-9));
  rep.checks.push_back(bounded_check("max |x1+x2-1|", worst_sum, 1e-12));
  return rep;
}

JobReport verify_difference_identities() {
  JobReport rep;
  rep.command = "verify difference-identities";
  rep.inputs = json{{"suite", "difference-identities"}};

  int first_ok = 0;
  for (int d = 1; d <= 20; ++d) {
    Polynomial expected = Rational(factorial(d), 2) * Polynomial{Rational(1 - d), Rational(2)};
    if (finite_difference(Polynomial::monomial(d), d - 1) == expected) ++first_ok;
  }
  rep.checks.push_back(exact_check("next-to-top difference of x^d, d=1..20", first_ok == 20,
                                   std::to_string(first_ok) + "/20"));

  int second_ok = 0;
  for (int d = 2; d <= 20; ++d) {
    Polynomial expected =
        Rational(factorial(d), 24) *
        Polynomial{Rational(3 * d * d - 11 * d + 10), Rational(-12 * (d - 2)), Rational(12)};
    if (finite_difference(Polynomial::monomial(d), d - 2) == expected) ++second_ok;
  }
  rep.checks.push_back(exact_check("second-to-top difference of x^d, d=2..20", second_ok == 19,
                                   std::to_string(second_ok) + "/19"));

  int poch_ok = 0;
  for (int n = 2; n <= 25; ++n) {
    auto c = pochhammer_alpha_coeffs(n, n);
    bool ok = c[static_cast<std::size_t>(n - 1)] == Rational(-n) * (n + 1) / 2 &&
              c[static_cast<std::size_t>(n - 2)] == Rational(n - 1) * n * (n + 1) * (3 * n + 2) / 24;
    if (ok) ++poch_ok;
  }
  rep.checks.push_back(exact_check("pochhammer subleading coefficients, n=2..25", poch_ok == 24,
                                   std::to_string(poch_ok) + "/24"));
  return rep;
}

JobReport verify_catalog_bounds() {
  JobReport rep;
  rep.command = "verify catalog-bounds";
  rep.inputs = json{{"suite", "catalog-bounds"}, {"d_max", 60}};
  auto catalog = enumerate_catalog(60);
  int lower_ok = 0, upper_ok = 0, gap_ok = 0;
  for (const Domain& inv : catalog) {
    Rational S = curvature_scalars(inv).S;
    Rational d(inv.dim);
    if (S > Rational(1, 2) - Rational(8) / (3 * (4 * d + 1))) ++lower_ok;
    if (S <= Rational(1, 2) - Rational(1) / (2 * d)) ++upper_ok;
    if (s_lower_gap(inv) < 0) ++gap_ok;
  }
  int total = static_cast<int>(catalog.size());
  auto frac = [&](int k) { return std::to_string(k) + "/" + std::to_string(total); };
  rep.checks.push_back(exact_check("strict lower bound on S", lower_ok == total, frac(lower_ok)));
  rep.checks.push_back(exact_check("upper bound on S", upper_ok == total, frac(upper_ok)));
  rep.checks.push_back(exact_check("negative lower-bound gap", gap_ok == total, frac(gap_ok)));
  return rep;
}

JobReport verify_epsilon_constancy(std::uint64_t seed, int samples) {
  JobReport rep;
  rep.command = "verify epsilon-constancy";
  rep.inputs = json{{"suite", "epsilon-constancy"}, {"samples", samples}};
  rep.seed = seed;

  CartanHartogs balanced({ball(1), domain_III(2)}, {Rational(1), Rational(1, 2)}, 1);
  for (double alpha : {5.0, 5.5, 100.0}) {
    std::vector<double> vals;
    for (int i = 0; i < samples; ++i)
      vals.push_back(epsilon_eval(balanced, alpha, sample_point(balanced, seed + static_cast<std::uint64_t>(i))));
    std::ostringstream name;
    name << "balanced spread at alpha=" << alpha;
    rep.checks.push_back(bounded_check(name.str(), relative_spread(vals), 1e-10));
  }

  CartanHartogs unbalanced({ball(1), ball(1)}, {Rational(2, 3), Rational(2, 3)}, 1);
  std::vector<double> vals;
  for (int i = 0; i < samples; ++i)
    vals.push_back(epsilon_eval(unbalanced, 10.0, sample_point(unbalanced, seed + static_cast<std::uint64_t>(i))));
  rep.checks.push_back(
      bounded_check("non-balanced spread at alpha=10", relative_spread(vals), 1e-3, false));
  return rep;
}

JobReport verify_kernel_vs_hessian(std::uint64_t seed, int samples) {
  JobReport rep;
  rep.command = "verify kernel-vs-hessian";
  rep.inputs = json{{"suite", "kernel-vs-hessian"}, {"samples", samples}};
  rep.seed = seed;

  CartanHartogs spec({ball(1), ball(2)}, {Rational(1, 2), Rational(1, 3)}, 1);
  double worst = 0;
  for (int i = 0; i < samples; ++i) {
    DomainPoint pt = sample_point(spec, seed + static_cast<std::uint64_t>(i));
    double analytic = monge_ampere_det(spec, pt);
    double numeric = hessian_fd_oracle(spec, pt, 1e-4).determinant().real();
    worst = std::max(worst, std::abs(numeric / analytic - 1));
  }
  rep.checks.push_back(bounded_check("ball-only Hessian determinant agreement", worst, 1e-4));

  DomainPoint pt;
  pt.blocks = {ComplexMatrix::Zero(1, 1), ComplexMatrix::Zero(1, 2)};
  pt.fiber = ComplexVector::Zero(1);
  pt.fiber[0] = std::complex<double>(0.3, 0.4);
  ComplexMatrix H = hessian_fd_oracle(spec, pt, 1e-4);
  double nw = pt.fiber.squaredNorm(), denom = 1 - nw;
  double block_err = 0;
  std::complex<double> expected_w =
      std::conj(pt.fiber[0]) * pt.fiber[0] / (denom * denom) + 1 / denom;
  block_err = std::max(block_err, std::abs(H(3, 3) - expected_w));
  double mus[3] = {0.5, 1.0 / 3, 1.0 / 3};
  for (int i = 0; i < 3; ++i)
    block_err = std::max(block_err, std::abs(H(i, i) - std::complex<double>(mus[i] / denom, 0)));
  rep.checks.push_back(bounded_check("origin Hessian block closed form", block_err, 1e-6));
  return rep;
}

JobReport run_verify(const std::string& suite, std::uint64_t seed, int samples) {
  if (suite == "difference-identities") return verify_difference_identities();
  if (suite == "catalog-bounds") return verify_catalog_bounds();
  if (suite == "epsilon-constancy") return verify_epsilon_constancy(seed, samples);
  if (suite == "kernel-vs-hessian") return verify_kernel_vs_hessian(seed, samples);
  throw std::invalid_argument("unknown verify suite '" + suite +
                              "' (known: difference-identities, catalog-bounds, "
                              "epsilon-constancy, kernel-vs-hessian)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"balanced-metric certification for generalized Cartan-Hartogs domains"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable report");

  std::string domain_spec;
  auto* cmd_domain = app.add_subcommand("domain", "invariants and Hua polynomial of one domain");
  cmd_domain->add_option("spec", domain_spec, "domain spec, e.g. I(2,3), III(2), B(4), V")->required();

  std::string factors_text, mu_text;
  int d0 = 1;
  auto* cmd_balanced = app.add_subcommand("balanced", "certify the balancedness identity");
  cmd_balanced->add_option("factors", factors_text, "comma-separated factor specs")->required();
  cmd_balanced->add_option("--mu", mu_text, "comma-separated positive rationals p/q")->required();
  cmd_balanced->add_option("--d0", d0, "fiber dimension (default 1)");

  int dmax = 0, denom_max = 0;
  unsigned workers = 0;
  auto* cmd_classify = app.add_subcommand("classify", "enumerate balanced two-factor domains");
  cmd_classify->add_option("--dmax", dmax, "bound on d1+d2")->required();
  cmd_classify->add_option("--denom-max", denom_max, "bound on exponent denominators")->required();
  cmd_classify->add_option("--workers", workers, "worker threads (0 = auto)");

  std::string a2_first, a2_second;
  auto* cmd_a2 = app.add_subcommand("a2solve", "solve for exponents making a2 constant");
  cmd_a2->add_option("spec1", a2_first, "first factor")->required();
  cmd_a2->add_option("spec2", a2_second, "second factor")->required();

  std::string suite;
  std::uint64_t seed = 7;
  int samples = 200;
  auto* cmd_verify = app.add_subcommand("verify", "run a named property suite");
  cmd_verify->add_option("suite", suite, "difference-identities | catalog-bounds | epsilon-constancy | kernel-vs-hessian")->required();
  cmd_verify->add_option("--seed", seed, "sampling seed");
  cmd_verify->add_option("--samples", samples, "sample count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_domain) return finish(run_domain(domain_spec), as_json);
    if (*cmd_balanced) return finish(run_balanced(factors_text, mu_text, d0), as_json);
    if (*cmd_classify) return finish(run_classify(dmax, denom_max, workers), as_json);
    if (*cmd_a2) return finish(run_a2solve(a2_first, a2_second), as_json);
    if (*cmd_verify) {
      if (!cmd_verify->count("--samples") && suite == "kernel-vs-hessian") samples = 20;
      return finish(run_verify(suite, seed, samples), as_json);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
