#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rootsign/error.hpp"

namespace rootsign::exact {

/// Polynomials over the prime field F_p, coefficients low degree first,
/// each in [0, p). The zero polynomial is the empty vector.
using PolyFp = std::vector<std::int64_t>;

namespace poly {

using i64 = std::int64_t;

inline i64 modp(i64 a, i64 p) {
  i64 r = a % p;
  return r < 0 ? r + p : r;
}

inline i64 pow_mod(i64 a, i64 e, i64 p) {
  i64 r = 1 % p;
  a = modp(a, p);
  while (e > 0) {
    if (e & 1) r = static_cast<i64>((static_cast<__int128>(r) * a) % p);
    a = static_cast<i64>((static_cast<__int128>(a) * a) % p);
    e >>= 1;
  }
  return r;
}

inline i64 inv_mod(i64 a, i64 p) {
  a = modp(a, p);
  if (a == 0) fail(ErrorKind::zero_argument, "inverse of zero mod p");
  return pow_mod(a, p - 2, p);
}

inline void trim(PolyFp& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline PolyFp normalized(PolyFp f, i64 p) {
  for (auto& c : f) c = modp(c, p);
  trim(f);
  return f;
}

inline int degree(const PolyFp& f) { return static_cast<int>(f.size()) - 1; }  // -1 for zero

inline PolyFp constant(i64 c, i64 p) { return normalized(PolyFp{c}, p); }
inline PolyFp x_poly() { return PolyFp{0, 1}; }

inline PolyFp add(const PolyFp& a, const PolyFp& b, i64 p) {
  PolyFp r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

inline PolyFp sub(const PolyFp& a, const PolyFp& b, i64 p) {
  PolyFp r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = modp(r[i] - b[i], p);
  trim(r);
  return r;
}

inline PolyFp scale(const PolyFp& a, i64 c, i64 p) {
  c = modp(c, p);
  PolyFp r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<i64>((static_cast<__int128>(a[i]) * c) % p);
  trim(r);
  return r;
}

inline PolyFp mul(const PolyFp& a, const PolyFp& b, i64 p) {
  if (a.empty() || b.empty()) return {};
  PolyFp r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<i64>((r[i + j] + static_cast<__int128>(a[i]) * b[j]) % p);
  }
  trim(r);
  return r;
}

/// (quotient, remainder)
inline std::pair<PolyFp, PolyFp> divmod(PolyFp a, const PolyFp& b, i64 p) {
  if (b.empty()) fail(ErrorKind::zero_argument, "polynomial division by zero");
  const int db = degree(b);
  if (degree(a) < db) return {{}, a};
  const i64 lead_inv = inv_mod(b.back(), p);
  PolyFp q(static_cast<std::size_t>(degree(a) - db + 1), 0);
  for (int i = degree(a); i >= db; --i) {
    const i64 c = static_cast<i64>((static_cast<__int128>(a[static_cast<std::size_t>(i)]) * lead_inv) % p);
    q[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int k = 0; k <= db; ++k) {
      auto& s = a[static_cast<std::size_t>(i - db + k)];
      s = modp(s - static_cast<i64>((static_cast<__int128>(c) * b[static_cast<std::size_t>(k)]) % p), p);
    }
  }
  trim(q);
  trim(a);
  return {q, a};
}

inline PolyFp rem(const PolyFp& a, const PolyFp& b, i64 p) { return divmod(a, b, p).second; }

inline PolyFp monic(const PolyFp& a, i64 p) {
  if (a.empty()) return a;
  return scale(a, inv_mod(a.back(), p), p);
}

inline PolyFp gcd(PolyFp a, PolyFp b, i64 p) {
  while (!b.empty()) {
    PolyFp r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

inline PolyFp derivative(const PolyFp& a, i64 p) {
  PolyFp r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(static_cast<i64>((static_cast<__int128>(a[i]) * static_cast<i64>(i % static_cast<std::size_t>(p))) % p));
  trim(r);
  return r;
}

inline i64 eval(const PolyFp& a, i64 x, i64 p) {
  i64 r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = static_cast<i64>((static_cast<__int128>(r) * x + a[i]) % p);
  return r;
}

inline PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, i64 p) { return rem(mul(a, b, p), m, p); }

inline PolyFp powmod(PolyFp base, boost::multiprecision::cpp_int e, const PolyFp& m, i64 p) {
  PolyFp r = rem(constant(1, p), m, p);
  base = rem(base, m, p);
  while (e > 0) {
    if ((e & 1) != 0) r = mulmod(r, base, m, p);
    base = mulmod(base, base, m, p);
    e >>= 1;
  }
  return r;
}

inline bool is_one(const PolyFp& a) { return a.size() == 1 && a[0] == 1; }

/// Rabin-style test: f of degree n irreducible iff x^(p^n) = x mod f and
/// gcd(x^(p^(n/r)) - x, f) = 1 for every prime r | n.
inline bool is_irreducible(const PolyFp& f_in, i64 p) {
  const PolyFp f = monic(normalized(f_in, p), p);
  const int n = degree(f);
  if (n < 1) return false;
  if (n == 1) return true;
  auto frob_power = [&](int k) {
    PolyFp h = x_poly();
    for (int i = 0; i < k; ++i) h = powmod(h, p, f, p);
    return h;
  };
  if (sub(frob_power(n), rem(x_poly(), f, p), p) != PolyFp{}) return false;
  int m = n;
  for (int r = 2; r <= m; ++r) {
    if (m % r != 0) continue;
    while (m % r == 0) m /= r;
    if (!is_one(gcd(sub(frob_power(n / r), x_poly(), p), f, p))) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::pair<PolyFp, int>> squarefree(const PolyFp& f, i64 p) {
  std::vector<std::pair<PolyFp, int>> out;
  if (degree(f) < 1) return out;
  PolyFp c = gcd(f, derivative(f, p), p);
  PolyFp w = divmod(f, c, p).first;
  int i = 1;
  while (!is_one(w) && !w.empty()) {
    PolyFp y = gcd(w, c, p);
    PolyFp fac = divmod(w, y, p).first;
    if (degree(fac) > 0) out.emplace_back(monic(fac, p), i);
    w = y;
    c = divmod(c, y, p).first;
    ++i;
  }
  if (degree(c) > 0) {
    // c is a p-th power
    PolyFp root;
    for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(p)) root.push_back(c[k]);
    for (auto& [g, e] : squarefree(root, p)) out.emplace_back(g, e * static_cast<int>(p));
  }
  return out;
}

inline std::vector<std::pair<PolyFp, int>> distinct_degree(PolyFp f, i64 p) {
  std::vector<std::pair<PolyFp, int>> out;
  PolyFp h = x_poly();
  int i = 1;
  while (degree(f) >= 2 * i) {
    h = powmod(h, p, f, p);
    PolyFp g = gcd(sub(h, x_poly(), p), f, p);
    if (!is_one(g)) {
      out.emplace_back(g, i);
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
    }
    ++i;
  }
  if (degree(f) > 0) out.emplace_back(monic(f, p), degree(f));
  return out;
}

inline void equal_degree(const PolyFp& g, int d, i64 p, std::mt19937_64& rng, std::vector<PolyFp>& out) {
  if (degree(g) == d) {
    out.push_back(monic(g, p));
    return;
  }
  std::uniform_int_distribution<i64> coeff(0, p - 1);
  using boost::multiprecision::cpp_int;
  for (;;) {
    PolyFp a;
    for (int k = 0; k < degree(g); ++k) a.push_back(coeff(rng));
    trim(a);
    if (degree(a) < 1) continue;
    PolyFp b;
    if (p == 2) {
      PolyFp term = a;
      b = a;
      for (int k = 1; k < d; ++k) {
        term = mulmod(term, term, g, p);
        b = add(b, term, p);
      }
    } else {
      cpp_int e = boost::multiprecision::pow(cpp_int(p), d);
      e = (e - 1) / 2;
      b = sub(powmod(a, e, g, p), constant(1, p), p);
    }
    PolyFp h = gcd(b, g, p);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      equal_degree(h, d, p, rng, out);
      equal_degree(divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

}  // namespace detail

/// Factorization into monic irreducibles with multiplicities (unit dropped),
/// sorted by (degree, coefficients).
inline std::vector<std::pair<PolyFp, int>> factor(const PolyFp& f_in, i64 p) {
  const PolyFp f = monic(normalized(f_in, p), p);
  std::vector<std::pair<PolyFp, int>> out;
  std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(p) * 1315423911ULL + f.size());
  for (auto& [part, mult] : detail::squarefree(f, p)) {
    for (auto& [g, d] : detail::distinct_degree(part, p)) {
      std::vector<PolyFp> pieces;
      detail::equal_degree(g, d, p, rng, pieces);
      for (auto& piece : pieces) out.emplace_back(piece, mult);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return std::lexicographical_compare(a.first.rbegin(), a.first.rend(), b.first.rbegin(), b.first.rend());
  });
  // merge repeated factors
  std::vector<std::pair<PolyFp, int>> merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
    else merged.push_back(e);
  }
  return merged;
}

/// Monic irreducible polynomials of the given degree, in increasing order of
/// the lower coefficients read as (c0, c1, ...) lexicographically.
inline std::vector<PolyFp> monic_irreducibles(int d, i64 p) {
  std::vector<PolyFp> out;
  i64 count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (i64 idx = 0; idx < count; ++idx) {
    PolyFp f(static_cast<std::size_t>(d) + 1, 0);
    f[static_cast<std::size_t>(d)] = 1;
    // c0 most significant
    i64 rest = idx;
    for (int i = d - 1; i >= 0; --i) {
      f[static_cast<std::size_t>(i)] = rest % p;
      rest /= p;
    }
    if (is_irreducible(f, p)) out.push_back(f);
  }
  return out;
}

}  // namespace poly
}  // namespace rootsign::exact
