#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/error.hpp"
#include "rootsign/exact/poly_fp.hpp"

namespace rootsign::exact {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

inline std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

class FieldElement;

/// F_q with q = p^f. Elements are coded as integers c0 + c1 p + ... + c_{f-1} p^(f-1)
/// in the power basis of the modulus. Log, exp and trace tables are built once.
class FiniteField : public std::enable_shared_from_this<FiniteField> {
 public:
  using i64 = std::int64_t;
  static constexpr i64 max_order = i64{1} << 20;

  /// Shared instance with the default (lexicographically least) modulus.
  static std::shared_ptr<const FiniteField> get(i64 p, int f = 1) {
    static std::mutex mu;
    static std::map<std::pair<i64, int>, std::shared_ptr<const FiniteField>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{p, f}];
    if (!slot) slot = make(p, default_modulus(p, f));
    return slot;
  }

  static std::shared_ptr<const FiniteField> make(i64 p, PolyFp modulus) {
    if (!is_prime(p)) fail(ErrorKind::invalid_field, "characteristic " + std::to_string(p) + " is not prime");
    modulus = poly::normalized(std::move(modulus), p);
    if (poly::degree(modulus) < 1 || modulus.back() != 1 || !poly::is_irreducible(modulus, p))
      fail(ErrorKind::invalid_field, "modulus is not monic irreducible");
    i64 q = 1;
    for (int i = 0; i < poly::degree(modulus); ++i) {
      q *= p;
      if (q > max_order) fail(ErrorKind::invalid_field, "field too large");
    }
    return std::shared_ptr<const FiniteField>(new FiniteField(p, std::move(modulus), q));
  }

  static PolyFp default_modulus(i64 p, int f) {
    if (f < 1) fail(ErrorKind::invalid_field, "extension degree must be at least 1");
    if (!is_prime(p)) fail(ErrorKind::invalid_field, "characteristic " + std::to_string(p) + " is not prime");
    if (f == 1) return {0, 1};
    i64 count = 1;
    for (int i = 0; i < f; ++i) {
      count *= p;
      if (count > max_order) fail(ErrorKind::invalid_field, "field too large");
    }
    // coefficient lists (c0, ..., c_{f-1}) in lexicographic order
    for (i64 idx = 0; idx < count; ++idx) {
      PolyFp m(static_cast<std::size_t>(f) + 1, 0);
      m[static_cast<std::size_t>(f)] = 1;
      i64 rest = idx;
      for (int i = f - 1; i >= 0; --i) {
        m[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      if (poly::is_irreducible(m, p)) return m;
    }
    fail(ErrorKind::invalid_field, "no irreducible polynomial found");
  }

  i64 p() const { return p_; }
  int f() const { return poly::degree(modulus_); }
  i64 q() const { return q_; }
  const PolyFp& modulus() const { return modulus_; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement element(i64 code) const;
  FieldElement from_coords(const std::vector<i64>& coords) const;
  FieldElement from_poly(const PolyFp& a) const;
  /// The canonical generator g0 of the multiplicative group.
  FieldElement generator() const;
  std::vector<FieldElement> elements() const;

  // code-level arithmetic
  std::vector<i64> coords(i64 code) const {
    std::vector<i64> c(static_cast<std::size_t>(f()), 0);
    for (auto& x : c) {
      x = code % p_;
      code /= p_;
    }
    return c;
  }

  i64 encode(const std::vector<i64>& c) const {
    i64 code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p_ + poly::modp(c[i], p_);
    return code;
  }

  i64 add(i64 a, i64 b) const {
    if (f() == 1) return (a + b) % p_;
    i64 code = 0, mul = 1;
    while (a > 0 || b > 0) {
      code += ((a % p_ + b % p_) % p_) * mul;
      a /= p_;
      b /= p_;
      mul *= p_;
    }
    return code;
  }

  i64 neg(i64 a) const {
    i64 code = 0, mul = 1;
    while (a > 0) {
      code += ((p_ - a % p_) % p_) * mul;
      a /= p_;
      mul *= p_;
    }
    return code;
  }

  i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }

  i64 mul(i64 a, i64 b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>((log_[a] + log_[b]) % (q_ - 1))];
  }

  i64 inv(i64 a) const {
    if (a == 0) fail(ErrorKind::zero_argument, "inverse of zero");
    return exp_[static_cast<std::size_t>((q_ - 1 - log_[a]) % (q_ - 1))];
  }

  i64 pow(i64 a, i64 e) const {
    if (a == 0) {
      if (e < 0) fail(ErrorKind::zero_argument, "negative power of zero");
      return e == 0 ? 1 : 0;
    }
    i64 l = (static_cast<i64>((static_cast<__int128>(log_[a]) * (e % (q_ - 1))) % (q_ - 1)) + (q_ - 1)) % (q_ - 1);
    return exp_[static_cast<std::size_t>(l)];
  }

  /// Discrete log to the canonical generator.
  i64 log(i64 a) const {
    if (a == 0) fail(ErrorKind::zero_argument, "discrete log of zero");
    return log_[a];
  }

  i64 exp(i64 k) const { return exp_[static_cast<std::size_t>(poly::modp(k, q_ - 1))]; }

  /// Absolute trace to F_p.
  i64 trace(i64 a) const {
    i64 t = 0;
    for (int i = 0; i < f(); ++i) {
      t = (t + (a % p_) * trace_basis_[static_cast<std::size_t>(i)]) % p_;
      a /= p_;
    }
    return t;
  }

  i64 generator_code() const { return exp_.size() > 1 ? exp_[1] : 1; }

  friend bool operator==(const FiniteField& a, const FiniteField& b) { return a.p_ == b.p_ && a.modulus_ == b.modulus_; }

  std::string name() const { return f() == 1 ? "F_" + std::to_string(p_) : "F_" + std::to_string(p_) + "^" + std::to_string(f()); }

 private:
  FiniteField(i64 p, PolyFp modulus, i64 q) : p_(p), modulus_(std::move(modulus)), q_(q) { build_tables(); }

  PolyFp to_poly(i64 code) const {
    PolyFp a = coords(code);
    poly::trim(a);
    return a;
  }

  i64 from_poly_code(const PolyFp& a) const {
    PolyFp r = poly::rem(a, modulus_, p_);
    r.resize(static_cast<std::size_t>(f()), 0);
    return encode(r);
  }

  i64 slow_mul(i64 a, i64 b) const { return from_poly_code(poly::mul(to_poly(a), to_poly(b), p_)); }

  bool is_primitive(i64 g) const {
    const i64 n = q_ - 1;
    for (i64 r : prime_divisors(n)) {
      i64 e = n / r, acc = 1, base = g;
      while (e > 0) {
        if (e & 1) acc = slow_mul(acc, base);
        base = slow_mul(base, base);
        e >>= 1;
      }
      if (acc == 1) return false;
    }
    return true;
  }

  void build_tables() {
    // least primitive element, ordering coordinate lists (c0, c1, ...) lexicographically
    i64 g = 1;
    if (q_ > 2) {
      bool found = false;
      for (i64 idx = 1; idx < q_ && !found; ++idx) {
        std::vector<i64> c(static_cast<std::size_t>(f()), 0);
        i64 rest = idx;
        for (int i = f() - 1; i >= 0; --i) {
          c[static_cast<std::size_t>(i)] = rest % p_;
          rest /= p_;
        }
        const i64 code = encode(c);
        if (code != 0 && is_primitive(code)) {
          g = code;
          found = true;
        }
      }
    }
    exp_.assign(static_cast<std::size_t>(q_ - 1), 0);
    log_.assign(static_cast<std::size_t>(q_), -1);
    i64 cur = 1;
    for (i64 k = 0; k < q_ - 1; ++k) {
      exp_[static_cast<std::size_t>(k)] = cur;
      log_[static_cast<std::size_t>(cur)] = k;
      cur = slow_mul(cur, g);
    }
    // Tr(x^i) for the power basis
    trace_basis_.assign(static_cast<std::size_t>(f()), 0);
    for (int i = 0; i < f(); ++i) {
      PolyFp xi(static_cast<std::size_t>(i) + 1, 0);
      xi[static_cast<std::size_t>(i)] = 1;
      i64 u = from_poly_code(xi);
      i64 sum = 0;
      for (int j = 0; j < f(); ++j) {
        sum = add(sum, u);
        u = pow_slow(u, p_);
      }
      trace_basis_[static_cast<std::size_t>(i)] = sum;  // lies in F_p, so code < p
    }
  }

  i64 pow_slow(i64 a, i64 e) const {
    i64 acc = 1;
    while (e > 0) {
      if (e & 1) acc = slow_mul(acc, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return acc;
  }

  i64 p_;
  PolyFp modulus_;
  i64 q_;
  std::vector<i64> exp_;
  std::vector<i64> log_;
  std::vector<i64> trace_basis_;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

class FieldElement {
 public:
  using i64 = std::int64_t;

  FieldElement() = default;
  FieldElement(FieldPtr field, i64 code) : field_(std::move(field)), code_(code) {}

  const FieldPtr& field() const { return field_; }
  i64 code() const { return code_; }
  std::vector<i64> coords() const { return field_->coords(code_); }
  bool is_zero() const { return code_ == 0; }
  bool is_one() const { return code_ == 1; }

  FieldElement inv() const { return {field_, field_->inv(code_)}; }
  FieldElement pow(i64 e) const { return {field_, field_->pow(code_, e)}; }
  i64 log() const { return field_->log(code_); }
  i64 trace() const { return field_->trace(code_); }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) { return {a.field_, a.field_->add(a.code_, b.code_)}; }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) { return {a.field_, a.field_->sub(a.code_, b.code_)}; }
  FieldElement operator-() const { return {field_, field_->neg(code_)}; }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) { return {a.field_, a.field_->mul(a.code_, b.code_)}; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) { return a * b.inv(); }
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.code_ == b.code_ && *a.field_ == *b.field_; }

  std::string to_string() const {
    if (field_->f() == 1) return std::to_string(code_);
    auto c = coords();
    std::string s = "(";
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  }

 private:
  FieldPtr field_;
  i64 code_ = 0;
};

inline FieldElement FiniteField::zero() const { return {shared_from_this(), 0}; }
inline FieldElement FiniteField::one() const { return {shared_from_this(), 1}; }
inline FieldElement FiniteField::element(i64 code) const {
  if (code < 0 || code >= q_) fail(ErrorKind::invalid_field, "element code out of range");
  return {shared_from_this(), code};
}
inline FieldElement FiniteField::from_coords(const std::vector<i64>& c) const {
  std::vector<i64> cc(static_cast<std::size_t>(f()), 0);
  for (std::size_t i = 0; i < c.size() && i < cc.size(); ++i) cc[i] = c[i];
  if (c.size() > cc.size()) return from_poly(c);
  return {shared_from_this(), encode(cc)};
}
inline FieldElement FiniteField::from_poly(const PolyFp& a) const { return {shared_from_this(), from_poly_code(poly::normalized(a, p_))}; }
inline FieldElement FiniteField::generator() const { return {shared_from_this(), generator_code()}; }
inline std::vector<FieldElement> FiniteField::elements() const {
  std::vector<FieldElement> out;
  out.reserve(static_cast<std::size_t>(q_));
  for (i64 c = 0; c < q_; ++c) out.emplace_back(shared_from_this(), c);
  return out;
}

inline FieldElement canonical_generator(const FieldPtr& field) { return field->generator(); }

}  // namespace rootsign::exact
