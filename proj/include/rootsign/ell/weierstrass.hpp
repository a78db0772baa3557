#pragma once

#include <array>
#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/ell/integer.hpp"

namespace rootsign::ell {

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with integer coefficients.
struct WeierstrassModel {
  Int a1, a2, a3, a4, a6;

  std::array<Int, 5> coeffs() const { return {a1, a2, a3, a4, a6}; }

  friend bool operator==(const WeierstrassModel&, const WeierstrassModel&) = default;

  std::string to_string() const { return "[" + str(a1) + "," + str(a2) + "," + str(a3) + "," + str(a4) + "," + str(a6) + "]"; }
};

struct CurveInvariants {
  Int b2, b4, b6, b8, c4, c6, disc;
  Rat j;
};

inline CurveInvariants invariants_unchecked(const WeierstrassModel& w) {
  CurveInvariants c;
  c.b2 = w.a1 * w.a1 + 4 * w.a2;
  c.b4 = 2 * w.a4 + w.a1 * w.a3;
  c.b6 = w.a3 * w.a3 + 4 * w.a6;
  c.b8 = w.a1 * w.a1 * w.a6 + 4 * w.a2 * w.a6 - w.a1 * w.a3 * w.a4 + w.a2 * w.a3 * w.a3 - w.a4 * w.a4;
  c.c4 = c.b2 * c.b2 - 24 * c.b4;
  c.c6 = -c.b2 * c.b2 * c.b2 + 36 * c.b2 * c.b4 - 216 * c.b6;
  c.disc = -c.b2 * c.b2 * c.b8 - 8 * c.b4 * c.b4 * c.b4 - 27 * c.b6 * c.b6 + 9 * c.b2 * c.b4 * c.b6;
  if (c.disc != 0) c.j = Rat(Int(c.c4 * c.c4 * c.c4)) / Rat(c.disc);
  return c;
}

inline CurveInvariants invariants(const WeierstrassModel& w) {
  auto c = invariants_unchecked(w);
  if (c.disc == 0) fail(ErrorKind::singular_model, w.to_string() + " has zero discriminant");
  return c;
}

inline Int discriminant(const WeierstrassModel& w) { return invariants(w).disc; }

/// Parse "[a1,a2,a3,a4,a6]" (brackets optional, commas or spaces as separators).
inline WeierstrassModel parse_model(const std::string& text) {
  std::string s;
  for (char ch : text) s += (ch == '[' || ch == ']' || ch == ',') ? ' ' : ch;
  std::vector<Int> v;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i == s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    const Rat r = parse_rational(s.substr(i, j - i));
    if (denominator(r) != 1) fail(ErrorKind::parse_error, "curve coefficients must be integers: " + text);
    v.push_back(numerator(r));
    i = j;
  }
  if (v.size() != 5) fail(ErrorKind::parse_error, "expected five coefficients [a1,a2,a3,a4,a6], got '" + text + "'");
  return {v[0], v[1], v[2], v[3], v[4]};
}

/// A rational point, either the point at infinity (0:1:0) or affine (x, y).
struct RationalPoint {
  bool infinity = true;
  Rat x, y;

  static RationalPoint at_infinity() { return {}; }
  static RationalPoint affine(Rat x, Rat y) { return {false, std::move(x), std::move(y)}; }

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return a.x == b.x && a.y == b.y;
  }

  friend bool operator<(const RationalPoint& a, const RationalPoint& b) {
    if (a.infinity != b.infinity) return a.infinity;
    if (a.infinity) return false;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }

  /// Primitive integer projective triple (X:Y:Z) with Z >= 0.
  std::array<Int, 3> projective() const {
    if (infinity) return {Int(0), Int(1), Int(0)};
    const Int dx = denominator(x), dy = denominator(y);
    const Int z = boost::multiprecision::lcm(dx, dy);
    Int X = numerator(x) * (z / dx), Y = numerator(y) * (z / dy), Z = z;
    const Int g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs_int(X), abs_int(Y)), Z);
    return {X / g, Y / g, Z / g};
  }

  std::string to_string() const {
    if (infinity) return "O";
    return "(" + str(x) + "," + str(y) + ")";
  }
};

/// Parse "(x,y)", "[x,y]" or "O".
inline RationalPoint parse_point(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s == "O" || s == "o" || s == "0" || s == "(0:1:0)") return RationalPoint::at_infinity();
  if (s.size() < 2 || !((s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']')))
    fail(ErrorKind::parse_error, "point must look like (x,y), [x,y] or O: '" + text + "'");
  s = s.substr(1, s.size() - 2);
  const auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    fail(ErrorKind::parse_error, "point needs exactly two coordinates: '" + text + "'");
  return RationalPoint::affine(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

inline std::vector<RationalPoint> parse_points(const std::string& text) {
  // "(0,0);(1,2)" or "(0,0) (1,2)"
  std::vector<RationalPoint> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (depth == 0 && (ch == ';' || std::isspace(static_cast<unsigned char>(ch)))) {
      if (!cur.empty()) out.push_back(parse_point(cur));
      cur.clear();
      continue;
    }
    cur += ch;
    if (depth == 0 && (ch == ')' || ch == ']' || cur == "O")) {
      out.push_back(parse_point(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(parse_point(cur));
  return out;
}

inline bool on_curve(const WeierstrassModel& w, const RationalPoint& P) {
  if (P.infinity) return true;
  const Rat &x = P.x, &y = P.y;
  return y * y + Rat(w.a1) * x * y + Rat(w.a3) * y == x * x * x + Rat(w.a2) * x * x + Rat(w.a4) * x + Rat(w.a6);
}

inline void require_on_curve(const WeierstrassModel& w, const RationalPoint& P) {
  if (!on_curve(w, P)) fail(ErrorKind::off_curve, P.to_string() + " is not on " + w.to_string());
}

inline RationalPoint negate(const WeierstrassModel& w, const RationalPoint& P) {
  require_on_curve(w, P);
  if (P.infinity) return P;
  return RationalPoint::affine(P.x, -P.y - Rat(w.a1) * P.x - Rat(w.a3));
}

/// Chord-tangent addition.
inline RationalPoint add(const WeierstrassModel& w, const RationalPoint& P, const RationalPoint& Q) {
  require_on_curve(w, P);
  require_on_curve(w, Q);
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const Rat a1(w.a1), a2(w.a2), a3(w.a3), a4(w.a4), a6(w.a6);
  Rat lambda, nu;
  if (P.x == Q.x) {
    if (P.y + Q.y + a1 * Q.x + a3 == 0) return RationalPoint::at_infinity();
    const Rat den = 2 * P.y + a1 * P.x + a3;
    lambda = (3 * P.x * P.x + 2 * a2 * P.x + a4 - a1 * P.y) / den;
    nu = (-P.x * P.x * P.x + a4 * P.x + 2 * a6 - a3 * P.y) / den;
  } else {
    lambda = (Q.y - P.y) / (Q.x - P.x);
    nu = (P.y * Q.x - Q.y * P.x) / (Q.x - P.x);
  }
  const Rat x3 = lambda * lambda + a1 * lambda - a2 - P.x - Q.x;
  const Rat y3 = -(lambda + a1) * x3 - nu - a3;
  return RationalPoint::affine(x3, y3);
}

inline RationalPoint multiply(const WeierstrassModel& w, const RationalPoint& P, long long k) {
  RationalPoint acc = RationalPoint::at_infinity(), base = k < 0 ? negate(w, P) : P;
  if (k < 0) k = -k;
  while (k > 0) {
    if (k & 1) acc = add(w, acc, base);
    base = add(w, base, base);
    k >>= 1;
  }
  return acc;
}

/// Order of P if it is at most `bound`, otherwise nullopt.
inline std::optional<int> point_order(const WeierstrassModel& w, const RationalPoint& P, int bound = 12) {
  RationalPoint Q = P;
  for (int n = 1; n <= bound; ++n) {
    if (Q.infinity) return n;
    Q = add(w, Q, P);
  }
  return std::nullopt;
}

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Isomorphism {
  Rat u{1}, r{0}, s{0}, t{0};

  static Isomorphism identity() { return {}; }

  /// this followed by other
  Isomorphism then(const Isomorphism& o) const {
    return {u * o.u, u * u * o.r + r, u * o.s + s, u * u * u * o.t + s * u * u * o.r + t};
  }

  bool is_identity() const { return u == 1 && r == 0 && s == 0 && t == 0; }

  RationalPoint map(const RationalPoint& P) const {
    if (P.infinity) return P;
    const Rat x = (P.x - r) / (u * u);
    const Rat y = (P.y - s * (P.x - r) - t) / (u * u * u);
    return RationalPoint::affine(x, y);
  }

  std::array<Rat, 5> apply(const std::array<Rat, 5>& a) const {
    const Rat &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    const Rat u2 = u * u, u3 = u2 * u, u4 = u2 * u2, u6 = u3 * u3;
    return {(a1 + 2 * s) / u,
            (a2 - s * a1 + 3 * r - s * s) / u2,
            (a3 + r * a1 + 2 * t) / u3,
            (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4,
            (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6};
  }

  WeierstrassModel apply(const WeierstrassModel& w) const {
    const auto out = apply(std::array<Rat, 5>{Rat(w.a1), Rat(w.a2), Rat(w.a3), Rat(w.a4), Rat(w.a6)});
    std::array<Int, 5> ints;
    for (int i = 0; i < 5; ++i) {
      if (denominator(out[static_cast<std::size_t>(i)]) != 1)
        fail(ErrorKind::not_minimal, "change of variables does not give an integral model");
      ints[static_cast<std::size_t>(i)] = numerator(out[static_cast<std::size_t>(i)]);
    }
    return {ints[0], ints[1], ints[2], ints[3], ints[4]};
  }

  std::string to_string() const { return "[u=" + str(u) + ",r=" + str(r) + ",s=" + str(s) + ",t=" + str(t) + "]"; }
};

}  // namespace rootsign::ell
