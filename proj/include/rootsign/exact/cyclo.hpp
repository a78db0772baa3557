#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/error.hpp"

namespace rootsign::exact {

using i64 = std::int64_t;

namespace detail {

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::overflow, "cyclotomic coefficient addition");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::overflow, "cyclotomic coefficient product");
  return r;
}

inline i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

// Integer polynomials, low degree first.
using IntPoly = std::vector<i64>;

inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dd = den.size() - 1;
  IntPoly q(num.size() - dd, 0);
  for (std::size_t i = num.size(); i-- > dd;) {
    const i64 c = num[i];
    q[i - dd] = c;
    if (c == 0) continue;
    for (std::size_t k = 0; k <= dd; ++k) num[i - dd + k] -= c * den[k];
  }
  return q;
}

struct CyclotomicEntry {
  IntPoly poly;  // Phi_m, monic, degree phi(m)
  std::vector<std::pair<std::size_t, i64>> lower_terms;  // nonzero terms below the leading one
};

inline const CyclotomicEntry& cyclotomic(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicEntry>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(m); it != cache.end()) return *it->second;

  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed without re-entering the lock.
  std::map<int, IntPoly> local;
  auto compute = [&](auto&& self, int n) -> IntPoly {
    if (auto it = cache.find(n); it != cache.end()) return it->second->poly;
    if (auto it = local.find(n); it != local.end()) return it->second;
    IntPoly num(static_cast<std::size_t>(n) + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d) {
      if (n % d == 0) num = exact_divide(num, self(self, d));
    }
    local[n] = num;
    return num;
  };
  auto entry = std::make_unique<CyclotomicEntry>();
  entry->poly = compute(compute, m);
  for (std::size_t k = 0; k + 1 < entry->poly.size(); ++k) {
    if (entry->poly[k] != 0) entry->lower_terms.emplace_back(k, entry->poly[k]);
  }
  auto& ref = *entry;
  cache[m] = std::move(entry);
  return ref;
}

}  // namespace detail

/// Element of Z[zeta_m], zeta_m = exp(2*pi*i/m).
///
/// Coefficients are indexed by exponent 0..m-1 and kept reduced modulo the
/// m-th cyclotomic polynomial, so equal values have identical coefficient
/// vectors (entries at index >= phi(m) are always zero).
class CycloValue {
 public:
  CycloValue() : m_(1), c_(1, 0) {}

  explicit CycloValue(int order) : m_(order), c_(static_cast<std::size_t>(order), 0) {
    if (order < 1) fail(ErrorKind::invalid_field, "root-of-unity order must be positive");
  }

  /// zeta_m^k
  static CycloValue root(int m, i64 k) {
    CycloValue v(m);
    v.c_[static_cast<std::size_t>(detail::mod_floor(k, m))] = 1;
    v.canonicalize();
    return v;
  }

  static CycloValue integer(i64 n, int m = 1) {
    CycloValue v(m);
    v.c_[0] = n;
    return v;
  }

  /// Builds a value from coefficients of powers of zeta_m (any length; indices wrap mod m).
  static CycloValue from_exponent_coeffs(int m, const std::vector<i64>& coeffs) {
    CycloValue v(m);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      auto& slot = v.c_[i % static_cast<std::size_t>(m)];
      slot = detail::checked_add(slot, coeffs[i]);
    }
    v.canonicalize();
    return v;
  }

  int order() const { return m_; }
  const std::vector<i64>& coeffs() const { return c_; }

  bool is_zero() const {
    for (i64 x : c_)
      if (x != 0) return false;
    return true;
  }

  /// Same value viewed inside Z[zeta_M]; M must be a multiple of order().
  CycloValue lift(int big_m) const {
    if (big_m % m_ != 0) fail(ErrorKind::invalid_field, "lift target order is not a multiple");
    if (big_m == m_) return *this;
    CycloValue v(big_m);
    const int step = big_m / m_;
    for (int i = 0; i < m_; ++i) v.c_[static_cast<std::size_t>(i * step)] = c_[static_cast<std::size_t>(i)];
    v.canonicalize();
    return v;
  }

  /// Complex conjugation, i.e. zeta -> zeta^{-1}.
  CycloValue conj() const {
    CycloValue v(m_);
    for (int i = 0; i < m_; ++i) {
      if (c_[static_cast<std::size_t>(i)] != 0) v.c_[static_cast<std::size_t>((m_ - i) % m_)] = c_[static_cast<std::size_t>(i)];
    }
    v.canonicalize();
    return v;
  }

  bool is_real() const { return conj() == *this; }

  std::complex<long double> numeric() const {
    std::complex<long double> s = 0;
    const long double two_pi = 2.0L * std::acos(-1.0L);
    for (int i = 0; i < m_; ++i) {
      const i64 c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      const long double ang = two_pi * static_cast<long double>(i) / static_cast<long double>(m_);
      s += static_cast<long double>(c) * std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    return s;
  }

  std::optional<i64> as_integer() const {
    for (int i = 1; i < m_; ++i)
      if (c_[static_cast<std::size_t>(i)] != 0) return std::nullopt;
    return c_[0];
  }

  /// If the value is a root of unity, returns (M, j) with value = zeta_M^j, M = lcm(order, 2).
  std::optional<std::pair<int, i64>> root_of_unity_exponent() const {
    const int big = std::lcm(m_, 2);
    const CycloValue here = lift(big);
    for (i64 j = 0; j < big; ++j) {
      if (here == root(big, j)) return std::make_pair(big, j);
    }
    return std::nullopt;
  }

  bool is_root_of_unity() const { return (*this * conj()) == integer(1); }

  /// Integer power; negative exponents are allowed for roots of unity only.
  CycloValue pow(i64 e) const {
    CycloValue base = *this;
    if (e < 0) {
      if (!is_root_of_unity()) fail(ErrorKind::zero_argument, "negative power of a non-unit cyclotomic value");
      base = conj();
      e = -e;
    }
    CycloValue acc = integer(1, m_);
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  friend CycloValue operator+(const CycloValue& a, const CycloValue& b) {
    const int m = std::lcm(a.m_, b.m_);
    CycloValue x = a.lift(m), y = b.lift(m);
    for (int i = 0; i < m; ++i) {
      auto& s = x.c_[static_cast<std::size_t>(i)];
      s = detail::checked_add(s, y.c_[static_cast<std::size_t>(i)]);
    }
    return x;
  }

  CycloValue operator-() const {
    CycloValue v = *this;
    for (auto& x : v.c_) x = -x;
    return v;
  }

  friend CycloValue operator-(const CycloValue& a, const CycloValue& b) { return a + (-b); }

  friend CycloValue operator*(const CycloValue& a, const CycloValue& b) {
    const int m = std::lcm(a.m_, b.m_);
    const CycloValue x = a.lift(m), y = b.lift(m);
    std::vector<std::pair<int, i64>> ys;
    for (int j = 0; j < m; ++j)
      if (y.c_[static_cast<std::size_t>(j)] != 0) ys.emplace_back(j, y.c_[static_cast<std::size_t>(j)]);
    CycloValue out(m);
    for (int i = 0; i < m; ++i) {
      const i64 ci = x.c_[static_cast<std::size_t>(i)];
      if (ci == 0) continue;
      for (auto [j, cj] : ys) {
        auto& slot = out.c_[static_cast<std::size_t>((i + j) % m)];
        slot = detail::checked_add(slot, detail::checked_mul(ci, cj));
      }
    }
    out.canonicalize();
    return out;
  }

  bool divisible_by(i64 n) const {
    for (i64 c : c_) {
      if (c % n != 0) return false;
    }
    return true;
  }

  CycloValue divided_by(i64 n) const {
    CycloValue v = *this;
    for (auto& c : v.c_) c /= n;
    return v;
  }

  friend CycloValue operator*(i64 k, const CycloValue& a) {
    CycloValue v = a;
    for (auto& x : v.c_) x = detail::checked_mul(x, k);
    return v;
  }

  friend bool operator==(const CycloValue& a, const CycloValue& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    const int m = std::lcm(a.m_, b.m_);
    return a.lift(m).c_ == b.lift(m).c_;
  }

  /// Canonical text form "c0 + c1*z^1 + ..." over zeta_m.
  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < m_; ++i) {
      const i64 c = c_[static_cast<std::size_t>(i)];
      if (c == 0) continue;
      if (!first) os << (c < 0 ? " - " : " + ");
      else if (c < 0) os << "-";
      const i64 mag = c < 0 ? -c : c;
      if (i == 0) os << mag;
      else if (mag == 1) os << "z^" << i;
      else os << mag << "*z^" << i;
      first = false;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void canonicalize() {
    if (m_ == 1) return;
    const auto& phi = detail::cyclotomic(m_);
    const std::size_t deg = phi.poly.size() - 1;
    for (std::size_t i = c_.size(); i-- > deg;) {
      const i64 c = c_[i];
      if (c == 0) continue;
      c_[i] = 0;
      const std::size_t base = i - deg;
      for (auto [k, pk] : phi.lower_terms) {
        auto& slot = c_[base + k];
        slot = detail::checked_add(slot, -detail::checked_mul(c, pk));
      }
    }
  }

  int m_;
  std::vector<i64> c_;
};

/// An algebraic value times a positive real scale: value = algebraic * prod(base^(twice/2)).
///
/// Gauss sums keep their exact algebraic value here with the q^(-1/2)
/// normalization carried in the scale, so no square roots are ever taken.
class NormalizedValue {
 public:
  NormalizedValue() : alg_(CycloValue::integer(1)) {}
  explicit NormalizedValue(CycloValue alg) : alg_(std::move(alg)) {}
  NormalizedValue(CycloValue alg, std::map<i64, int> twice_exps) : alg_(std::move(alg)), scale_(std::move(twice_exps)) {
    absorb();
    prune();
  }

  static NormalizedValue one() { return NormalizedValue(); }

  const CycloValue& algebraic() const { return alg_; }
  /// base -> twice the exponent; e.g. {13: -1} means 13^(-1/2).
  const std::map<i64, int>& scale() const { return scale_; }

  long double scale_numeric() const {
    long double s = 1.0L;
    for (auto [b, t] : scale_) s *= std::pow(static_cast<long double>(b), static_cast<long double>(t) / 2.0L);
    return s;
  }

  std::complex<long double> numeric() const { return alg_.numeric() * scale_numeric(); }

  bool is_zero() const { return alg_.is_zero(); }
  bool is_real() const { return alg_.is_real(); }

  NormalizedValue conj() const { return NormalizedValue(alg_.conj(), scale_); }

  friend NormalizedValue operator*(const NormalizedValue& a, const NormalizedValue& b) {
    std::map<i64, int> s = a.scale_;
    for (auto [base, t] : b.scale_) s[base] += t;
    return NormalizedValue(a.alg_ * b.alg_, std::move(s));
  }

  /// Inverse of a value of absolute value one, which is its conjugate.
  /// Unitarity is verified exactly.
  NormalizedValue unitary_inverse() const {
    if (!is_unitary()) fail(ErrorKind::zero_argument, "inverse requested for a non-unitary value");
    return conj();
  }

  /// |value| == 1, decided exactly: alg * conj(alg) * scale^2 == 1.
  bool is_unitary() const {
    auto [num, den] = squared_scale();
    return (num * (alg_ * alg_.conj())) == CycloValue::integer(den);
  }

  NormalizedValue pow(i64 e) const {
    NormalizedValue base = e < 0 ? unitary_inverse() : *this;
    if (e < 0) e = -e;
    NormalizedValue acc;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Exact equality of the represented complex numbers.
  friend bool operator==(const NormalizedValue& v, const NormalizedValue& w) {
    if (w.is_zero() || v.is_zero()) return v.is_zero() && w.is_zero();
    // v = a*s, w = b*t with s, t > 0. Let X = a*conj(b), Y = b*conj(b) > 0.
    // v == w  <=>  X*s == Y*t  <=>  X^2 s^2 == Y^2 t^2  and  X real positive.
    const CycloValue x = v.alg_ * w.alg_.conj();
    const CycloValue y = w.alg_ * w.alg_.conj();
    auto [sn, sd] = v.squared_scale();
    auto [tn, td] = w.squared_scale();
    const CycloValue lhs = detail::checked_mul(sn, td) * (x * x);
    const CycloValue rhs = detail::checked_mul(tn, sd) * (y * y);
    if (!(lhs == rhs)) return false;
    return x.numeric().real() > 0;
  }

  bool is_one() const { return *this == one(); }

  /// Human-readable form: "+1", "-1", "+i", "-i" for fourth roots of unity, numeric otherwise.
  std::string describe() const {
    for (auto [name, val] : {std::pair<const char*, i64>{"+1", 0}, {"+i", 1}, {"-1", 2}, {"-i", 3}}) {
      if (*this == NormalizedValue(CycloValue::root(4, val))) return name;
    }
    std::ostringstream os;
    const auto z = numeric();
    os << static_cast<double>(z.real()) << (z.imag() < 0 ? " - " : " + ") << std::abs(static_cast<double>(z.imag())) << "i";
    return os.str();
  }

 private:
  // scale^2 as a fraction num/den of integers
  std::pair<i64, i64> squared_scale() const {
    i64 num = 1, den = 1;
    for (auto [b, t] : scale_) {
      for (int k = 0; k < (t < 0 ? -t : t); ++k) {
        if (t > 0) num = detail::checked_mul(num, b);
        else den = detail::checked_mul(den, b);
      }
    }
    return {num, den};
  }

  // pull whole powers of a base out of the algebraic part while they divide it
  void absorb() {
    for (auto& [b, t] : scale_) {
      while (t <= -2 && !alg_.is_zero() && alg_.divisible_by(b)) {
        alg_ = alg_.divided_by(b);
        t += 2;
      }
    }
  }

  void prune() {
    for (auto it = scale_.begin(); it != scale_.end();) {
      if (it->second == 0) it = scale_.erase(it);
      else ++it;
    }
  }

  CycloValue alg_;
  std::map<i64, int> scale_;
};

/// Sign of a real nonzero value.
inline int real_sign(const NormalizedValue& v) {
  if (v.is_zero()) fail(ErrorKind::zero_value, "sign of zero");
  if (!v.is_real()) fail(ErrorKind::not_real, "value is not fixed by complex conjugation");
  const long double x = v.algebraic().numeric().real();
  return x > 0 ? 1 : -1;
}

inline int real_sign(const CycloValue& v) { return real_sign(NormalizedValue(v)); }

}  // namespace rootsign::exact
