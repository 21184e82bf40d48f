#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hartogs {

// Exact scalars. Every value in the exact layer is one of these; no
// floating point is ever mixed in. cpp_rational keeps lowest terms and a
// positive denominator after every operation.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline std::string to_string(const Int& n) {
  std::ostringstream os;
  os << n;
  return os.str();
}

/// Integer power with negative exponents allowed (base must be nonzero then).
inline Rational pow(const Rational& base, int exp) {
  if (exp < 0) {
    if (base == 0) throw std::domain_error("pow: zero base with negative exponent");
    return Rational(1) / pow(base, -exp);
  }
  Rational acc(1), b = base;
  while (exp > 0) {
    if (exp & 1) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

inline Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int acc = 1;
  for (int i = 1; i <= k; ++i) {
    acc *= n - k + i;
    acc /= i;
  }
  return acc;
}

inline Int factorial(int n) {
  Int acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

/// Exact square root of a nonnegative rational, if one exists.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Int num = numerator(q), den = denominator(q);
  Int sn = boost::multiprecision::sqrt(num);
  Int sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rational(sn, sd);
}

/// Parses "p/q" or "p" with optional sign and surrounding whitespace.
/// Decimal notation is rejected on purpose: the CLI promises exactness.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    throw std::invalid_argument("invalid rational '" + std::string(text) +
                                "' (expected integer or p/q)");
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) fail();
  auto slash = s.find('/');
  auto parse_int = [&](std::string_view part) -> Int {
    if (part.empty()) fail();
    bool negative = part[0] == '-';
    std::size_t i = (part[0] == '+' || part[0] == '-') ? 1 : 0;
    if (i == part.size()) fail();
    for (std::size_t j = i; j < part.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(part[j]))) fail();
    Int magnitude(std::string(part.substr(i)));
    return negative ? Int(-magnitude) : magnitude;
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Int num = parse_int(std::string_view(s).substr(0, slash));
  Int den = parse_int(std::string_view(s).substr(slash + 1));
  if (den == 0) throw std::invalid_argument("invalid rational '" + std::string(text) + "': zero denominator");
  return Rational(num, den);
}

}  // namespace hartogs
