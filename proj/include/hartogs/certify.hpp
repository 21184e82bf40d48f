#pragma once

#include <hartogs/hua.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <thread>
#include <vector>

namespace hartogs {

/// Outcome of the balancedness identity check. The metric alpha*g(mu) is
/// balanced precisely when `balanced` holds and alpha > alpha_threshold.
struct BalancedCertificate {
  bool balanced = false;
  Rational alpha_threshold;
  Polynomial lhs;  // chi~
  Polynomial rhs;  // prod mu_i^{d_i} * (x-1)...(x-d)
  std::optional<int> first_mismatch;  // lowest differing coefficient index
};

/// Exact coefficient-wise comparison of chi~ against the target product.
inline BalancedCertificate certify_balanced(const CartanHartogs& spec) {
  BalancedCertificate cert;
  cert.alpha_threshold = spec.alpha_threshold();
  cert.lhs = chi_tilde(spec);
  int d = spec.base_dim();
  cert.rhs = spec.mu_power_product() * raising_factorial(Rational(-d), d);
  cert.balanced = cert.lhs == cert.rhs;
  if (!cert.balanced) {
    for (int i = 0; i <= d; ++i) {
      if (cert.lhs.coefficient(i) != cert.rhs.coefficient(i)) {
        cert.first_mismatch = i;
        break;
      }
    }
  }
  return cert;
}

/// True for the factors that can appear in a balanced product: balls,
/// III(2), and odd IV(m). Equivalent to hua_chi(inv) being squarefree.
inline bool allowed_factor(const Domain& inv) {
  switch (inv.family) {
    case Family::I: return inv.par_m == 1;
    case Family::III: return inv.par_n == 2;
    case Family::IV: return inv.par_n % 2 == 1;
    default: return false;
  }
}

inline bool squarefree_check(const Polynomial& p) { return is_squarefree(p); }

/// Kaehler-Einstein condition on the canonical metric: mu_i = p_i/(d+1)
/// for every factor.
inline bool kahler_einstein(const CartanHartogs& spec) {
  Rational dp1(spec.base_dim() + 1);
  for (std::size_t i = 0; i < spec.factors.size(); ++i)
    if (spec.mu[i] * dp1 != spec.factors[i].genus) return false;
  return true;
}

/// One balanced two-factor hit: factors and exponents in canonical order
/// (mu descending, ties broken by factor name).
struct BalancedPair {
  Domain first, second;
  Rational mu_first, mu_second;

  friend bool operator==(const BalancedPair&, const BalancedPair&) = default;
  friend bool operator<(const BalancedPair& x, const BalancedPair& y) {
    if (x.first != y.first) return x.first < y.first;
    if (x.second != y.second) return x.second < y.second;
    if (x.mu_first != y.mu_first) return x.mu_first < y.mu_first;
    return x.mu_second < y.mu_second;
  }
};

namespace detail {

/// Necessary condition for the balancedness identity: every root of
/// chi_i(mu_i x - p_i) must be an integer in [1, d]. Cheap prefilter only;
/// survivors still get the full certificate.
inline bool roots_are_small_integers(const Domain& inv, const Rational& mu, int d) {
  for (const auto& [shift, len] : hua_chi_factors(inv)) {
    for (int l = 0; l < len; ++l) {
      // root of (mu x - p + shift + l)
      Rational root = (Rational(inv.genus) - shift - l) / mu;
      if (!is_integer(root) || root < 1 || root > d) return false;
    }
  }
  return true;
}

inline void canonicalize(BalancedPair& pair) {
  bool swap = pair.mu_first < pair.mu_second ||
              (pair.mu_first == pair.mu_second && pair.second.name() < pair.first.name());
  if (swap) {
    std::swap(pair.first, pair.second);
    std::swap(pair.mu_first, pair.mu_second);
  }
}

/// All reduced exponent candidates num/den with den <= denom_max and
/// 0 < num/den <= p - 1 (larger exponents push the largest certificate root
/// below 1).
inline std::vector<Rational> exponent_candidates(const Domain& inv, int denom_max) {
  std::vector<Rational> out;
  for (int den = 1; den <= denom_max; ++den)
    for (int num = 1; num <= (inv.genus - 1) * den; ++num) {
      if (boost::multiprecision::gcd(Int(num), Int(den)) != 1) continue;
      out.emplace_back(num, den);
    }
  return out;
}

}  // namespace detail

/// Bounded enumeration of balanced two-factor Cartan-Hartogs domains:
/// unordered pairs of allowed factors with d1 + d2 <= d_max and exponents of
/// denominator <= denom_max. Each hit is certified exactly and reported once
/// in canonical order; the output is sorted and deterministic regardless of
/// the worker count (0 = hardware concurrency).
inline std::vector<BalancedPair> classify_k2(int d_max, int denom_max, unsigned workers = 0) {
  if (d_max < 2) throw std::invalid_argument("classify_k2 requires d_max >= 2");
  if (denom_max < 1) throw std::invalid_argument("classify_k2 requires denom_max >= 1");

  std::vector<Domain> allowed;
  for (const Domain& inv : enumerate_catalog(d_max - 1))
    if (allowed_factor(inv)) allowed.push_back(inv);

  std::vector<std::pair<Domain, Domain>> pairs;
  for (std::size_t i = 0; i < allowed.size(); ++i)
    for (std::size_t j = i; j < allowed.size(); ++j)
      if (allowed[i].dim + allowed[j].dim <= d_max) pairs.emplace_back(allowed[i], allowed[j]);

  auto scan_pair = [&](const std::pair<Domain, Domain>& pr) {
    std::vector<BalancedPair> hits;
    int d = pr.first.dim + pr.second.dim;
    auto c1 = detail::exponent_candidates(pr.first, denom_max);
    auto c2 = detail::exponent_candidates(pr.second, denom_max);
    for (const Rational& m1 : c1) {
      if (!detail::roots_are_small_integers(pr.first, m1, d)) continue;
      for (const Rational& m2 : c2) {
        if (!detail::roots_are_small_integers(pr.second, m2, d)) continue;
        CartanHartogs spec({pr.first, pr.second}, {m1, m2}, 1);
        if (!certify_balanced(spec).balanced) continue;
        BalancedPair hit{pr.first, pr.second, m1, m2};
        detail::canonicalize(hit);
        hits.push_back(std::move(hit));
      }
    }
    return hits;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, std::max<std::size_t>(pairs.size(), 1));

  std::vector<BalancedPair> all;
  if (workers <= 1) {
    for (const auto& pr : pairs) {
      auto hits = scan_pair(pr);
      all.insert(all.end(), hits.begin(), hits.end());
    }
  } else {
    std::vector<std::future<std::vector<BalancedPair>>> futures;
    for (unsigned w = 0; w < workers; ++w) {
      futures.push_back(std::async(std::launch::async, [&, w] {
        std::vector<BalancedPair> chunk;
        for (std::size_t i = w; i < pairs.size(); i += workers) {
          auto hits = scan_pair(pairs[i]);
          chunk.insert(chunk.end(), hits.begin(), hits.end());
        }
        return chunk;
      }));
    }
    for (auto& f : futures) {
      auto chunk = f.get();
      all.insert(all.end(), chunk.begin(), chunk.end());
    }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

/// One solution of the constant-a2 system for a factor pair. The quantities
/// A, B, S_i and the discriminant are exact rationals; only the final square
/// root (hence x_i, mu_i) is floating point. When the discriminant is a
/// perfect rational square the exact exponents are reported as well.
struct A2Solution {
  double mu1 = 0, mu2 = 0;
  double x1 = 0, x2 = 0;
  int branch = 0;  // 0: +sqrt in x1, 1: -sqrt in x1
  double discriminant = 0;
  double residual_linear = 0;     // first equation of the system
  double residual_quadratic = 0;  // second equation of the system
  std::optional<std::pair<Rational, Rational>> exact_mu;
};

struct A2Report {
  Rational A, B, S1, S2, discriminant;
  std::vector<A2Solution> solutions;
};

/// The two inequalities guaranteeing the constant-a2 system is solvable with
/// positive exponents: S1 + S2 < 2B/A^2 < 1 and
/// 1/(1-2S1) + 1/(1-2S2) > 1/(1 - 2B/A^2). Exact.
inline bool solvability_bounds_hold(const Domain& f1, const Domain& f2) {
  int d = f1.dim + f2.dim;
  Rational A = Rational(d) * (d + 1);
  Rational B = Rational(d) * (d + 1) * (d - 1) * (3 * d + 2) / 6;
  Rational ratio = 2 * B / (A * A);
  Rational S1 = curvature_scalars(f1).S, S2 = curvature_scalars(f2).S;
  if (!(S1 + S2 < ratio && ratio < 1)) return false;
  return Rational(1) / (1 - 2 * S1) + Rational(1) / (1 - 2 * S2) > Rational(1) / (1 - ratio);
}

/// Solves for exponents (mu1, mu2) making the a2 coefficient of the epsilon
/// expansion constant. At least one positive solution always exists; all
/// branches with positive x1, x2 are returned.
inline A2Report solve_a2_constant(const Domain& f1, const Domain& f2) {
  int d = f1.dim + f2.dim;
  A2Report rep;
  rep.A = Rational(d) * (d + 1);
  rep.B = Rational(d) * (d + 1) * (d - 1) * (3 * d + 2) / 6;
  rep.S1 = curvature_scalars(f1).S;
  rep.S2 = curvature_scalars(f2).S;
  Rational ratio = rep.B / (rep.A * rep.A);
  rep.discriminant = 1 - 4 * ratio * (1 - rep.S1 - rep.S2) - 4 * rep.S1 * rep.S2;
  if (rep.discriminant < 0)
    throw std::logic_error("solve_a2_constant: negative discriminant contradicts the solvability bounds");

  auto exact_root = exact_sqrt(rep.discriminant);
  long double sqrt_delta = exact_root ? to_long_double(*exact_root)
                                      : sqrtl(to_long_double(rep.discriminant));
  long double denom = 2 * (1 - to_long_double(rep.S1) - to_long_double(rep.S2));
  long double Al = to_long_double(rep.A), Bl = to_long_double(rep.B);
  long double w1 = static_cast<long double>(f1.dim) * f1.genus;
  long double w2 = static_cast<long double>(f2.dim) * f2.genus;
  long double R1 = to_long_double(curvature_R(f1)), R2 = to_long_double(curvature_R(f2));

  for (int branch = 0; branch < 2; ++branch) {
    long double sign = branch == 0 ? 1.0L : -1.0L;
    long double x1 = (1 - 2 * to_long_double(rep.S2) + sign * sqrt_delta) / denom;
    long double x2 = (1 - 2 * to_long_double(rep.S1) - sign * sqrt_delta) / denom;
    if (!(x1 > 0 && x2 > 0)) continue;
    A2Solution sol;
    sol.branch = branch;
    long double mu1 = w1 / (Al * x1), mu2 = w2 / (Al * x2);
    sol.x1 = static_cast<double>(x1);
    sol.x2 = static_cast<double>(x2);
    sol.mu1 = static_cast<double>(mu1);
    sol.mu2 = static_cast<double>(mu2);
    sol.residual_linear = static_cast<double>(w1 / mu1 + w2 / mu2 - Al);
    sol.residual_quadratic = static_cast<double>(2 * R1 / (mu1 * mu1) + w1 * w2 / (mu1 * mu2) +
                                                 2 * R2 / (mu2 * mu2) - Bl);
    sol.discriminant = static_cast<double>(to_long_double(rep.discriminant));
    if (exact_root) {
      Rational x1e = (1 - 2 * rep.S2 + (branch == 0 ? *exact_root : -*exact_root)) /
                     (2 * (1 - rep.S1 - rep.S2));
      Rational x2e = 1 - x1e;
      sol.exact_mu = {{Rational(f1.dim) * f1.genus / (rep.A * x1e),
                       Rational(f2.dim) * f2.genus / (rep.A * x2e)}};
    }
    rep.solutions.push_back(std::move(sol));
  }
  if (rep.discriminant == 0 && rep.solutions.size() == 2) rep.solutions.pop_back();
  return rep;
}

}  // namespace hartogs
