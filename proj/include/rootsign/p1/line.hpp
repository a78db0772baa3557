#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "rootsign/exact/finite_field.hpp"
#include "rootsign/exact/poly_fp.hpp"

// The projective line over a prime field F_p: closed points, rational functions,
// logarithmic differentials and zero-cycle classes with modulus.
namespace rootsign::p1 {

using exact::FieldElement;
using exact::FieldPtr;
using exact::FiniteField;
using exact::PolyFp;
using i64 = std::int64_t;
namespace poly = exact::poly;

/// A closed point: infinity, or a monic irreducible polynomial in t.
struct ClosedPoint {
  bool infinity = false;
  PolyFp minpoly;

  static ClosedPoint at_infinity() { return {true, {}}; }
  static ClosedPoint rational(i64 a, i64 p) { return {false, PolyFp{poly::modp(-a, p), 1}}; }
  static ClosedPoint from_minpoly(const PolyFp& m, i64 p) {
    auto f = poly::normalized(m, p);
    if (poly::degree(f) < 1 || f.back() != 1 || !poly::is_irreducible(f, p))
      fail(ErrorKind::invalid_field, "closed point needs a monic irreducible polynomial");
    return {false, f};
  }

  int degree() const { return infinity ? 1 : poly::degree(minpoly); }
  // the F_p-rational coordinate of a degree-1 finite point
  i64 root(i64 p) const { return poly::modp(-minpoly[0], p); }

  friend bool operator==(const ClosedPoint& a, const ClosedPoint& b) { return a.infinity == b.infinity && a.minpoly == b.minpoly; }
  friend bool operator<(const ClosedPoint& a, const ClosedPoint& b) {
    if (a.infinity != b.infinity) return b.infinity;
    if (a.minpoly.size() != b.minpoly.size()) return a.minpoly.size() < b.minpoly.size();
    return a.minpoly < b.minpoly;
  }

  std::string to_string(i64 p) const {
    if (infinity) return "inf";
    if (degree() == 1) return "t=" + std::to_string(root(p));
    std::string s = "{";
    for (std::size_t i = 0; i < minpoly.size(); ++i) s += (i ? "," : "") + std::to_string(minpoly[i]);
    return s + "}";
  }
};

/// Residue field of a closed point. Degree >= 2 points use their own minimal polynomial as modulus.
inline FieldPtr residue_field(const ClosedPoint& x, i64 p) {
  if (x.degree() == 1) return FiniteField::get(p, 1);
  static std::mutex mu;
  static std::map<std::pair<i64, PolyFp>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, x.minpoly}];
  if (!slot) slot = FiniteField::make(p, x.minpoly);
  return slot;
}

/// Image of a polynomial in the residue field of a finite closed point.
inline FieldElement reduce_at(const PolyFp& g, const ClosedPoint& x, i64 p) {
  auto F = residue_field(x, p);
  if (x.degree() == 1) return F->element(poly::eval(g, x.root(p), p));
  return F->from_poly(poly::rem(g, x.minpoly, p));
}

/// f = num/den with gcd 1 and monic denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(PolyFp num, PolyFp den, i64 p) : p_(p) {
    num = poly::normalized(std::move(num), p);
    den = poly::normalized(std::move(den), p);
    if (den.empty()) fail(ErrorKind::zero_argument, "rational function with zero denominator");
    if (!num.empty()) {
      const auto g = poly::gcd(num, den, p);
      num = poly::divmod(num, g, p).first;
      den = poly::divmod(den, g, p).first;
    }
    const i64 lc = poly::inv_mod(den.back(), p);
    num_ = poly::scale(num, lc, p);
    den_ = poly::scale(den, lc, p);
    if (num_.empty()) den_ = PolyFp{1};
  }

  static RationalFunction constant(i64 c, i64 p) { return {PolyFp{c}, PolyFp{1}, p}; }
  static RationalFunction polynomial(PolyFp f, i64 p) { return {std::move(f), PolyFp{1}, p}; }

  const PolyFp& num() const { return num_; }
  const PolyFp& den() const { return den_; }
  i64 p() const { return p_; }
  bool is_zero() const { return num_.empty(); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {poly::mul(a.num_, b.num_, a.p_), poly::mul(a.den_, b.den_, a.p_), a.p_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) fail(ErrorKind::zero_argument, "division by the zero function");
    return {poly::mul(a.num_, b.den_, a.p_), poly::mul(a.den_, b.num_, a.p_), a.p_};
  }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    const i64 p = a.p_;
    return {poly::add(poly::mul(a.num_, b.den_, p), poly::mul(b.num_, a.den_, p), p), poly::mul(a.den_, b.den_, p), p};
  }
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string to_string() const {
    auto show = [&](const PolyFp& f) {
      if (f.empty()) return std::string("0");
      std::string s;
      for (int i = poly::degree(f); i >= 0; --i) {
        const i64 c = f[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (i == 0 || c != 1) s += std::to_string(c);
        if (i > 0) s += (c != 1 ? "*" : "") + std::string("t") + (i > 1 ? "^" + std::to_string(i) : "");
      }
      return s;
    };
    if (den_ == PolyFp{1}) return show(num_);
    return "(" + show(num_) + ")/(" + show(den_) + ")";
  }

 private:
  i64 p_ = 2;
  PolyFp num_, den_{1};
};

namespace detail {

inline int poly_valuation(PolyFp f, const PolyFp& pi, i64 p) {
  int v = 0;
  for (;;) {
    auto [q, r] = poly::divmod(f, pi, p);
    if (!r.empty()) return v;
    f = std::move(q);
    ++v;
  }
}

inline PolyFp strip(PolyFp f, const PolyFp& pi, i64 p) {
  for (;;) {
    auto [q, r] = poly::divmod(f, pi, p);
    if (!r.empty()) return f;
    f = std::move(q);
  }
}

}  // namespace detail

/// ord_x(f); zero has no order.
inline int ord_at(const RationalFunction& f, const ClosedPoint& x) {
  if (f.is_zero()) fail(ErrorKind::zero_argument, "order of the zero function");
  if (x.infinity) return poly::degree(f.den()) - poly::degree(f.num());
  const i64 p = f.p();
  return detail::poly_valuation(f.num(), x.minpoly, p) - detail::poly_valuation(f.den(), x.minpoly, p);
}

/// Leading coefficient of f at x with respect to the uniformizer (the minimal polynomial, or 1/t at infinity).
inline FieldElement unit_part(const RationalFunction& f, const ClosedPoint& x) {
  if (f.is_zero()) fail(ErrorKind::zero_argument, "unit part of the zero function");
  const i64 p = f.p();
  auto F = residue_field(x, p);
  if (x.infinity) return F->element(f.num().back()) * F->element(f.den().back()).inv();
  return reduce_at(detail::strip(f.num(), x.minpoly, p), x, p) * reduce_at(detail::strip(f.den(), x.minpoly, p), x, p).inv();
}

/// Divisor of f as closed point -> multiplicity.
inline std::map<ClosedPoint, int> divisor(const RationalFunction& f) {
  if (f.is_zero()) fail(ErrorKind::zero_argument, "divisor of the zero function");
  const i64 p = f.p();
  std::map<ClosedPoint, int> out;
  for (const auto& [g, e] : poly::factor(f.num(), p)) out[ClosedPoint{false, g}] += e;
  for (const auto& [g, e] : poly::factor(f.den(), p)) out[ClosedPoint{false, g}] -= e;
  if (const int v = ord_at(f, ClosedPoint::at_infinity()); v != 0) out[ClosedPoint::at_infinity()] = v;
  return out;
}

/// omega = f dt.
struct LogDifferential {
  RationalFunction f;
};

inline int ord_at(const LogDifferential& w, const ClosedPoint& x) {
  // dt = -s^-2 ds at infinity
  return ord_at(w.f, x) - (x.infinity ? 2 : 0);
}

inline FieldElement res_at(const LogDifferential& w, const ClosedPoint& x) {
  const i64 p = w.f.p();
  auto F = residue_field(x, p);
  const int v = ord_at(w, x);
  if (v >= 0) return F->zero();
  if (v < -1) fail(ErrorKind::higher_order_pole, "pole of order " + std::to_string(-v) + " at " + x.to_string(p));
  if (x.infinity) return -(F->element(w.f.num().back()) * F->element(w.f.den().back()).inv());
  // f = g / (pi h): residue against the uniformizer pi is g / (h pi') at the point
  const auto h = poly::divmod(w.f.den(), x.minpoly, p).first;
  const auto denom = poly::mul(h, poly::derivative(x.minpoly, p), p);
  return reduce_at(w.f.num(), x, p) * reduce_at(denom, x, p).inv();
}

inline std::map<ClosedPoint, int> divisor(const LogDifferential& w) {
  auto d = divisor(w.f);
  const ClosedPoint inf = ClosedPoint::at_infinity();
  d[inf] -= 2;
  if (d[inf] == 0) d.erase(inf);
  return d;
}

/// Degree of a divisor, weighted by residue degrees.
inline i64 degree(const std::map<ClosedPoint, int>& d) {
  i64 s = 0;
  for (const auto& [x, m] : d) s += static_cast<i64>(m) * x.degree();
  return s;
}

/// P^1 over F_p with a boundary D (crossing points) and auxiliary marked points.
struct MarkedLine {
  i64 p = 2;
  std::vector<ClosedPoint> D;
  std::vector<ClosedPoint> marked;

  bool in_D(const ClosedPoint& x) const { return std::find(D.begin(), D.end(), x) != D.end(); }
  bool is_marked(const ClosedPoint& x) const { return std::find(marked.begin(), marked.end(), x) != marked.end(); }
  i64 degree_D() const {
    i64 s = 0;
    for (const auto& x : D) s += x.degree();
    return s;
  }

  void validate() const {
    if (!exact::is_prime(p)) fail(ErrorKind::invalid_field, "base field must be a prime field");
    auto distinct = [](std::vector<ClosedPoint> v) {
      std::sort(v.begin(), v.end());
      return std::adjacent_find(v.begin(), v.end()) == v.end();
    };
    if (!distinct(D) || !distinct(marked)) fail(ErrorKind::overlap, "repeated closed point");
    for (const auto& x : marked)
      if (in_D(x)) fail(ErrorKind::overlap, "marked point " + x.to_string(p) + " lies on D");
  }
};

/// A class in H^1(X mod D): a divisor off D and a residue-field unit at each point of D.
struct ZeroCycleClass {
  std::map<ClosedPoint, int> offD;
  std::map<ClosedPoint, FieldElement> atD;

  i64 degree() const { return p1::degree(offD); }
};

/// The log form used for the relative canonical cycle, plus the auxiliary pole if one was needed.
struct CanonicalForm {
  LogDifferential omega;
  std::optional<ClosedPoint> aux;
  i64 aux_coeff = 0;
};

namespace detail {

inline PolyFp dlog_numerator_product(const std::vector<ClosedPoint>& pts, i64 p) {
  PolyFp prod{1};
  for (const auto& x : pts)
    if (!x.infinity) prod = poly::mul(prod, x.minpoly, p);
  return prod;
}

// first closed point off D whose degree is prime to p (so it can carry any residue at infinity)
inline ClosedPoint default_aux(const MarkedLine& X) {
  for (int d = 1;; ++d) {
    if (d % X.p == 0) continue;
    for (const auto& m : poly::monic_irreducibles(d, X.p)) {
      ClosedPoint y{false, m};
      if (!X.in_D(y)) return y;
    }
  }
}

}  // namespace detail

/// A form with a simple pole and residue 1 at every point of D.
/// The sum of dlogs of the finite points of D has residue 1 there; when infinity lies in D
/// an extra term c*dlog(rho) at an auxiliary point fixes the residue at infinity.
inline CanonicalForm canonical_log_form(const MarkedLine& X, std::optional<ClosedPoint> aux = std::nullopt) {
  X.validate();
  if (X.D.empty()) fail(ErrorKind::empty_divisor, "relative canonical cycle needs a nonempty D");
  const i64 p = X.p;
  const PolyFp Pi = detail::dlog_numerator_product(X.D, p);
  RationalFunction f(poly::derivative(Pi, p), Pi, p);
  CanonicalForm out;
  const bool inf_in_D = X.in_D(ClosedPoint::at_infinity());
  if (aux && (aux->infinity || X.in_D(*aux))) fail(ErrorKind::overlap, "auxiliary point must be finite and off D");
  i64 c = 0;
  ClosedPoint y = aux ? *aux : ClosedPoint{};
  if (inf_in_D) {
    // residues at infinity: -deg(Pi) from dlog(Pi), -c*deg(rho) from c*dlog(rho); want 1
    const i64 n = poly::degree(Pi);
    if (!aux) y = detail::default_aux(X);
    if (y.degree() % p == 0) fail(ErrorKind::wrong_divisor, "auxiliary point degree divisible by p");
    c = poly::modp(-(n + 1) * poly::inv_mod(y.degree(), p), p);
  } else if (aux) {
    c = 1;
  }
  if (c != 0) {
    f = f + RationalFunction(poly::scale(poly::derivative(y.minpoly, p), c, p), y.minpoly, p);
    out.aux = y;
    out.aux_coeff = c;
  }
  out.omega = LogDifferential{f};
  return out;
}

/// c_{X,U} = -sum over x off D of ord_x(omega) [x], for a form with ord -1 and residue 1 along D.
inline ZeroCycleClass canonical_cycle_from_form(const MarkedLine& X, const LogDifferential& omega) {
  const i64 p = X.p;
  for (const auto& x : X.D) {
    if (ord_at(omega, x) != -1 || !res_at(omega, x).is_one())
      fail(ErrorKind::wrong_divisor, "form does not have residue 1 with a simple pole at " + x.to_string(p));
  }
  ZeroCycleClass c;
  for (const auto& [x, m] : divisor(omega))
    if (!X.in_D(x)) c.offD[x] = -m;
  for (const auto& x : X.D) c.atD.emplace(x, residue_field(x, p)->one());
  return c;
}

inline ZeroCycleClass relative_canonical_cycle(const MarkedLine& X, std::optional<ClosedPoint> aux = std::nullopt) {
  return canonical_cycle_from_form(X, canonical_log_form(X, std::move(aux)).omega);
}

inline ZeroCycleClass lambda_class(const MarkedLine& X) {
  X.validate();
  ZeroCycleClass c;
  for (const auto& y : X.marked) c.offD[y] = 1;
  for (const auto& x : X.D) c.atD.emplace(x, residue_field(x, X.p)->one());
  return c;
}

/// delta class of gamma: zero off D, residues of gamma along D.
inline ZeroCycleClass delta_class(const MarkedLine& X, const LogDifferential& gamma) {
  X.validate();
  const i64 p = X.p;
  const auto div = divisor(gamma);
  auto expected = [&](const ClosedPoint& x) { return X.in_D(x) ? -1 : (X.is_marked(x) ? 1 : 0); };
  for (const auto& [x, m] : div)
    if (m != expected(x)) fail(ErrorKind::wrong_divisor, "gamma has order " + std::to_string(m) + " at " + x.to_string(p));
  for (const auto& x : X.D)
    if (!div.count(x)) fail(ErrorKind::wrong_divisor, "gamma has no pole at " + x.to_string(p));
  for (const auto& x : X.marked)
    if (!div.count(x)) fail(ErrorKind::wrong_divisor, "gamma does not vanish at " + x.to_string(p));
  ZeroCycleClass c;
  for (const auto& x : X.D) c.atD.emplace(x, res_at(gamma, x));
  return c;
}

/// The class of a function that is a unit along D.
inline ZeroCycleClass principal_class(const MarkedLine& X, const RationalFunction& f) {
  ZeroCycleClass c;
  for (const auto& [x, m] : divisor(f)) {
    if (X.in_D(x)) fail(ErrorKind::wrong_divisor, "function is not a unit at " + x.to_string(X.p));
    c.offD[x] = m;
  }
  for (const auto& x : X.D) c.atD.emplace(x, unit_part(f, x));
  return c;
}

}  // namespace rootsign::p1
