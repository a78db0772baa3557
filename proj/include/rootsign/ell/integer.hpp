#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include "rootsign/error.hpp"

namespace rootsign::ell {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Rat frac(const Int& a, const Int& b) { return Rat(a) / Rat(b); }

/// Floor division and non-negative remainder.
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  return r < 0 ? Int(r + m) : r;
}

inline std::int64_t mod_small(const Int& a, std::int64_t p) { return static_cast<std::int64_t>(mod_pos(a, Int(p))); }

/// p-adic valuation; zero has valuation `infinite`.
constexpr int infinite_valuation = 1 << 20;

inline int valuation(Int a, const Int& p) {
  if (a == 0) return infinite_valuation;
  int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

inline int valuation(const Rat& a, const Int& p) {
  if (a == 0) return infinite_valuation;
  return valuation(Int(numerator(a)), p) - valuation(Int(denominator(a)), p);
}

inline bool is_probable_prime(const Int& n) {
  if (n < 2) return false;
  static std::mt19937 rng(12345);
  return boost::multiprecision::miller_rabin_test(n, 25, rng);
}

inline Int isqrt(const Int& n) {
  if (n < 0) fail(ErrorKind::zero_argument, "square root of a negative integer");
  if (n < 2) return n;
  return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n) {
  if (n < 0) return false;
  const Int r = isqrt(n);
  return r * r == n;
}

namespace detail {

inline Int pollard_rho(const Int& n) {
  if (n % 2 == 0) return 2;
  for (Int c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto f = [&](const Int& v) { return Int((v * v + c) % n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = boost::multiprecision::gcd(abs_int(x - y), n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Int n, std::map<Int, int>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  const Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of |n| (n != 0).
inline std::map<Int, int> factorize(Int n) {
  if (n == 0) fail(ErrorKind::factorization, "cannot factor zero");
  n = abs_int(n);
  std::map<Int, int> out;
  for (std::int64_t p = 2; p < 10000 && Int(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[Int(p)];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

inline std::vector<Int> prime_factors(const Int& n) {
  std::vector<Int> out;
  for (const auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

inline std::int64_t to_i64(const Int& a) {
  if (a > Int(INT64_MAX) || a < Int(INT64_MIN)) fail(ErrorKind::overflow, "integer does not fit 64 bits");
  return static_cast<std::int64_t>(a);
}

inline std::string str(const Int& a) { return a.str(); }

inline std::string str(const Rat& a) {
  if (denominator(a) == 1) return numerator(a).str();
  return numerator(a).str() + "/" + denominator(a).str();
}

/// Parse an integer or a fraction "a/b".
inline Rat parse_rational(const std::string& s) {
  auto bad = [&]() { fail(ErrorKind::parse_error, "not a rational number: '" + s + "'"); };
  auto parse_int = [&](std::string t) -> Int {
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
    if (t.empty()) bad();
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) bad();
    for (std::size_t k = i; k < t.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(t[k]))) bad();
    }
    if (t[0] == '+') t = t.substr(1);
    return Int(t);
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  const Int den = parse_int(s.substr(slash + 1));
  if (den == 0) bad();
  return frac(parse_int(s.substr(0, slash)), den);
}

}  // namespace rootsign::ell
