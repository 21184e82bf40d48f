#pragma once

#include <hartogs/rational.hpp>

#include <compare>
#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hartogs {

/// The six Cartan families of irreducible bounded symmetric domains.
enum class Family { I, II, III, IV, V, VI };

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::I: return "I";
    case Family::II: return "II";
    case Family::III: return "III";
    case Family::IV: return "IV";
    case Family::V: return "V";
    case Family::VI: return "VI";
  }
  return "?";
}

/// One irreducible bounded symmetric domain with its numerical invariants:
/// rank r, multiplicities a and b, complex dimension d, genus p. The two
/// consistency relations d = r(r-1)a/2 + rb + r and p = (r-1)a + b + 2 hold
/// for every constructed instance.
struct Domain {
  Family family{};
  int par_m = 0;  // type I only
  int par_n = 0;  // types I-IV
  int rank = 0;
  int mult_a = 0;
  int mult_b = 0;
  int dim = 0;
  int genus = 0;

  bool is_ball() const { return family == Family::I && par_m == 1; }

  /// Canonical spec string: balls print as B(d), otherwise the family form.
  std::string name() const {
    switch (family) {
      case Family::I:
        if (par_m == 1) return "B(" + std::to_string(par_n) + ")";
        return "I(" + std::to_string(par_m) + "," + std::to_string(par_n) + ")";
      case Family::II: return "II(" + std::to_string(par_n) + ")";
      case Family::III: return "III(" + std::to_string(par_n) + ")";
      case Family::IV: return "IV(" + std::to_string(par_n) + ")";
      case Family::V: return "V";
      case Family::VI: return "VI";
    }
    return "?";
  }

  friend bool operator==(const Domain&, const Domain&) = default;
  friend std::strong_ordering operator<=>(const Domain& x, const Domain& y) {
    if (auto c = x.dim <=> y.dim; c != 0) return c;
    if (auto c = static_cast<int>(x.family) <=> static_cast<int>(y.family); c != 0) return c;
    if (auto c = x.par_m <=> y.par_m; c != 0) return c;
    return x.par_n <=> y.par_n;
  }
};

inline Domain domain_I(int m, int n) {
  if (m < 1 || m > n) throw std::invalid_argument("type I requires 1 <= m <= n");
  return {Family::I, m, n, m, 2, n - m, m * n, m + n};
}

/// Unit ball in C^d, the rank-one case I(1,d).
inline Domain ball(int d) { return domain_I(1, d); }

inline Domain domain_II(int n) {
  // II(2..4) are biholomorphic duplicates of other catalog entries and are
  // excluded; invariants split by parity.
  if (n < 5) throw std::invalid_argument("type II requires n >= 5");
  int d = n * (n - 1) / 2;
  if (n % 2 == 0) {
    int t = n / 2;
    return {Family::II, 0, n, t, 4, 0, d, 2 * (2 * t - 1)};
  }
  int t = (n - 1) / 2;
  return {Family::II, 0, n, t, 4, 2, d, 4 * t};
}

inline Domain domain_III(int n) {
  if (n < 2) throw std::invalid_argument("type III requires n >= 2");
  return {Family::III, 0, n, n, 1, 0, n * (n + 1) / 2, n + 1};
}

inline Domain domain_IV(int n) {
  // IV(2) is reducible and IV(3), IV(4) duplicate III(2), I(2,2).
  if (n < 5) throw std::invalid_argument("type IV requires n >= 5");
  return {Family::IV, 0, n, 2, n - 2, 0, n, n};
}

inline Domain domain_V() { return {Family::V, 0, 0, 2, 6, 4, 16, 12}; }

inline Domain domain_VI() { return {Family::VI, 0, 0, 3, 8, 0, 27, 18}; }

/// Checks the two invariant relations tying (r, a, b) to (d, p).
inline bool validate_invariants(const Domain& inv) {
  long long r = inv.rank, a = inv.mult_a, b = inv.mult_b;
  return 2 * inv.dim == r * (r - 1) * a + 2 * r * b + 2 * r && inv.genus == (r - 1) * a + b + 2;
}

/// All catalog domains of dimension <= d_max, each validated, sorted by
/// (dim, family, parameters). The exceptional domains appear iff their
/// dimensions (16, 27) fit.
inline std::vector<Domain> enumerate_catalog(int d_max) {
  if (d_max < 1) throw std::invalid_argument("enumerate_catalog requires d_max >= 1");
  std::vector<Domain> out;
  for (int m = 1; m * m <= d_max; ++m)
    for (int n = m; m * n <= d_max; ++n) out.push_back(domain_I(m, n));
  for (int n = 5; n * (n - 1) / 2 <= d_max; ++n) out.push_back(domain_II(n));
  for (int n = 2; n * (n + 1) / 2 <= d_max; ++n) out.push_back(domain_III(n));
  for (int n = 5; n <= d_max; ++n) out.push_back(domain_IV(n));
  if (d_max >= 16) out.push_back(domain_V());
  if (d_max >= 27) out.push_back(domain_VI());
  std::sort(out.begin(), out.end());
  return out;
}

/// Parses the CLI grammar  I(m,n) | II(n) | III(n) | IV(n) | V | VI | B(d),
/// case-insensitively, ignoring whitespace. B(d) is an alias for I(1,d).
inline Domain parse_domain(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("cannot parse domain '" + std::string(text) + "': " + why);
  };
  auto args_of = [&](std::size_t head_len, int expect) -> std::vector<int> {
    if (s.size() <= head_len || s[head_len] != '(' || s.back() != ')')
      fail("expected parenthesized parameters");
    std::vector<int> args;
    std::string cur;
    for (std::size_t i = head_len + 1; i + 1 < s.size(); ++i) {
      if (s[i] == ',') {
        if (cur.empty()) fail("empty parameter");
        args.push_back(std::stoi(cur));
        cur.clear();
      } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
        cur.push_back(s[i]);
      } else {
        fail("unexpected character in parameters");
      }
    }
    if (cur.empty()) fail("empty parameter");
    args.push_back(std::stoi(cur));
    if (static_cast<int>(args.size()) != expect) fail("wrong parameter count");
    return args;
  };
  if (s == "V") return domain_V();
  if (s == "VI") return domain_VI();
  if (s.starts_with("B(")) return ball(args_of(1, 1)[0]);
  if (s.starts_with("III")) return domain_III(args_of(3, 1)[0]);
  if (s.starts_with("II")) return domain_II(args_of(2, 1)[0]);
  if (s.starts_with("IV")) return domain_IV(args_of(2, 1)[0]);
  if (s.starts_with("I(")) {
    auto a = args_of(1, 2);
    return domain_I(a[0], a[1]);
  }
  fail("unknown family");
  return {};  // unreachable
}

}  // namespace hartogs
