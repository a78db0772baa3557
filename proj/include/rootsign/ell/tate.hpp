#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/ell/weierstrass.hpp"

namespace rootsign::ell {

struct Kodaira {
  enum class Kind { I0, In, InStar, II, III, IV, IVStar, IIIStar, IIStar };
  Kind kind = Kind::I0;
  int n = 0;  // for In and In*

  friend bool operator==(const Kodaira&, const Kodaira&) = default;

  bool is_good() const { return kind == Kind::I0; }
  bool is_multiplicative() const { return kind == Kind::In; }
  bool is_additive() const { return !is_good() && !is_multiplicative(); }

  int components() const {
    switch (kind) {
      case Kind::I0: return 1;
      case Kind::In: return n;
      case Kind::InStar: return n + 5;
      case Kind::II: return 1;
      case Kind::III: return 2;
      case Kind::IV: return 3;
      case Kind::IVStar: return 7;
      case Kind::IIIStar: return 8;
      case Kind::IIStar: return 9;
    }
    return 0;
  }

  std::string symbol() const {
    switch (kind) {
      case Kind::I0: return "I0";
      case Kind::In: return "I" + std::to_string(n);
      case Kind::InStar: return "I" + std::to_string(n) + "*";
      case Kind::II: return "II";
      case Kind::III: return "III";
      case Kind::IV: return "IV";
      case Kind::IVStar: return "IV*";
      case Kind::IIIStar: return "III*";
      case Kind::IIStar: return "II*";
    }
    return "?";
  }
};

struct KodairaData {
  Int p;
  Kodaira type;
  int vdisc = 0;        // valuation of the minimal discriminant
  int ncomponents = 1;  // geometric components of the special fiber
  std::optional<bool> split;  // multiplicative reduction only
  int conductor_exponent = 0;
  int tamagawa = 1;
  WeierstrassModel minimal_model;
  Isomorphism to_minimal;  // input model -> minimal_model

  bool good() const { return type.is_good(); }

  std::string reduction_class() const {
    if (type.is_good()) return "good";
    if (type.is_multiplicative()) return *split ? "split multiplicative" : "nonsplit multiplicative";
    return "additive";
  }

  std::string summary() const {
    std::string s = type.is_good() ? std::string("good") : type.symbol();
    if (split) s += *split ? " split" : " nonsplit";
    return s + ", v(Δ)=" + std::to_string(vdisc);
  }
};

namespace detail {

struct TateCursor {
  WeierstrassModel c;
  Isomorphism iso;

  void rst(const Int& r, const Int& s, const Int& t) {
    Isomorphism step{Rat(1), Rat(r), Rat(s), Rat(t)};
    c = step.apply(c);
    iso = iso.then(step);
  }

  void scale(const Int& u) {
    Isomorphism step{Rat(u), Rat(0), Rat(0), Rat(0)};
    c = step.apply(c);
    iso = iso.then(step);
  }
};

// solvability of a x^2 + b x + c = 0 over F_p
inline bool quad_has_root(const Int& a_in, const Int& b_in, const Int& c_in, const Int& p) {
  const Int a = mod_pos(a_in, p), b = mod_pos(b_in, p), c = mod_pos(c_in, p);
  if (a == 0) return b != 0 || c == 0;
  if (p == 2) return c == 0 || mod_pos(a + b + c, p) == 0;
  const Int d = mod_pos(b * b - 4 * a * c, p);
  if (d == 0) return true;
  return boost::multiprecision::powm(d, (p - 1) / 2, p) == 1;
}

// number of roots of x^3 + b x^2 + c x + d over F_p
inline int cubic_root_count(const Int& b, const Int& c, const Int& d, const Int& p) {
  if (p < 1000) {
    int n = 0;
    for (Int x = 0; x < p; ++x) {
      if (mod_pos(((x + b) * x + c) * x + d, p) == 0) ++n;
    }
    return n;
  }
  // gcd(x^p - x, f) over F_p, with polynomials as coefficient vectors low degree first
  using Poly = std::vector<Int>;
  auto trim = [](Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
  };
  auto polymod = [&](Poly a, const Poly& m) {
    trim(a);
    const Int inv = boost::multiprecision::powm(m.back(), p - 2, p);
    while (a.size() >= m.size()) {
      const Int coef = mod_pos(a.back() * inv, p);
      const std::size_t shift = a.size() - m.size();
      for (std::size_t i = 0; i < m.size(); ++i) a[shift + i] = mod_pos(a[shift + i] - coef * m[i], p);
      trim(a);
    }
    return a;
  };
  auto mulmod = [&](const Poly& a, const Poly& b, const Poly& m) {
    if (a.empty() || b.empty()) return Poly{};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    for (auto& x : r) x = mod_pos(x, p);
    return polymod(r, m);
  };
  Poly f{mod_pos(d, p), mod_pos(c, p), mod_pos(b, p), 1};
  Poly acc{1}, base{0, 1};
  for (Int e = p; e > 0; e >>= 1) {
    if ((e & 1) != 0) acc = mulmod(acc, base, f);
    base = mulmod(base, base, f);
  }
  // acc = x^p mod f; g = gcd(acc - x, f)
  acc.resize(std::max<std::size_t>(acc.size(), 2), 0);
  acc[1] = mod_pos(acc[1] - 1, p);
  trim(acc);
  Poly a = f, g = acc;
  while (!g.empty()) {
    Poly r = polymod(a, g);
    a = g;
    g = r;
  }
  return static_cast<int>(a.size()) - 1;
}

}  // namespace detail

/// Tate's algorithm at p, including p = 2, 3. The returned minimal model is
/// minimal at p and unchanged in valuation at every other prime.
inline KodairaData tate_algorithm(const WeierstrassModel& input, const Int& p) {
  if (!is_probable_prime(p)) fail(ErrorKind::invalid_field, str(p) + " is not prime");
  invariants(input);  // singularity check
  detail::TateCursor cur{input, Isomorphism::identity()};
  const Int p2 = p * p, p3 = p2 * p, p4 = p3 * p;
  auto pval = [&](const Int& x) { return valuation(x, p); };
  auto pdiv = [&](const Int& x) { return mod_pos(x, p) == 0; };
  auto pinv = [&](const Int& x) -> Int { return Int(boost::multiprecision::powm(mod_pos(x, p), Int(p - 2), p)); };
  const Int half = p == 2 ? Int(0) : (p + 1) / 2;

  KodairaData out;
  out.p = p;
  auto finish = [&](Kodaira k, int fp, int cp, std::optional<bool> split) {
    out.type = k;
    out.vdisc = pval(invariants(cur.c).disc);
    out.ncomponents = k.components();
    out.split = split;
    out.conductor_exponent = fp;
    out.tamagawa = cp;
    out.minimal_model = cur.c;
    out.to_minimal = cur.iso;
    return out;
  };

  for (;;) {
    auto inv = invariants(cur.c);
    const int vpd = pval(inv.disc);
    if (vpd == 0) return finish({Kodaira::Kind::I0, 0}, 0, 1, std::nullopt);

    // move the singular point to (0,0)
    Int r, t;
    {
      const auto& c = cur.c;
      if (p == 2) {
        if (pdiv(inv.b2)) {
          r = mod_pos(c.a4, p);
          t = mod_pos(((r + c.a2) * r + c.a4) * r + c.a6, p);
        } else {
          const Int a1inv = pinv(c.a1);
          r = a1inv * c.a3;
          t = a1inv * (c.a4 + r * r);
        }
      } else if (p == 3) {
        if (pdiv(inv.b2)) r = mod_pos(-inv.b6, p);
        else r = -pinv(inv.b2) * inv.b4;
        t = c.a1 * r + c.a3;
      } else {
        if (pdiv(inv.c4)) r = -pinv(12) * inv.b2;
        else r = -pinv(12 * inv.c4) * (inv.c6 + inv.b2 * inv.c4);
        t = -half * (c.a1 * r + c.a3);
      }
      r = mod_pos(r, p);
      t = mod_pos(t, p);
    }
    cur.rst(r, 0, t);
    inv = invariants(cur.c);

    // I_n: tangent cone y^2 + a1 xy - a2 x^2 at the node
    if (!pdiv(inv.b2)) {
      const bool split = detail::quad_has_root(1, cur.c.a1, -cur.c.a2, p);
      const int cp = split ? vpd : (vpd % 2 == 0 ? 2 : 1);
      return finish({Kodaira::Kind::In, vpd}, 1, cp, split);
    }
    if (pval(cur.c.a6) < 2) return finish({Kodaira::Kind::II, 0}, vpd, 1, std::nullopt);
    if (pval(inv.b8) < 3) return finish({Kodaira::Kind::III, 0}, vpd - 1, 2, std::nullopt);
    if (pval(inv.b6) < 3) {
      const int cp = detail::quad_has_root(1, cur.c.a3 / p, -cur.c.a6 / p2, p) ? 3 : 1;
      return finish({Kodaira::Kind::IV, 0}, vpd - 2, cp, std::nullopt);
    }

    // p | a1, a2; p^2 | a3, a4; p^3 | a6
    {
      Int s, tt;
      if (p == 2) {
        s = mod_pos(cur.c.a2, p);
        tt = p * mod_pos(cur.c.a6 / p2, p);
      } else if (p == 3) {
        s = cur.c.a1;
        tt = cur.c.a3;
      } else {
        s = -cur.c.a1 * half;
        tt = -cur.c.a3 * half;
      }
      cur.rst(0, s, tt);
    }

    const Int b = cur.c.a2 / p, c = cur.c.a4 / p2, d = cur.c.a6 / p3;
    const Int w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c;
    const Int x = 3 * c - b * b;
    const int sw = pdiv(w) ? (pdiv(x) ? 3 : 2) : 1;

    if (sw == 1) {
      const int cp = 1 + detail::cubic_root_count(b, c, d, p);
      return finish({Kodaira::Kind::InStar, 0}, vpd - 4, cp, std::nullopt);
    }

    if (sw == 2) {
      // double root moved to T = 0
      Int rr;
      if (p == 2) rr = mod_pos(c, p);
      else if (p == 3) rr = c * pinv(b);
      else rr = (b * c - 9 * d) * pinv(2 * x);
      cur.rst(p * mod_pos(rr, p), 0, 0);
      int ix = 3, iy = 3;
      Int mx = p2, my = p2;
      int cp = 0;
      for (;;) {
        Int a2t = cur.c.a2 / p, a3t = cur.c.a3 / my, a4t = cur.c.a4 / (p * mx), a6t = cur.c.a6 / (mx * my);
        if (pdiv(a3t * a3t + 4 * a6t)) {
          Int tt = p == 2 ? Int(my * mod_pos(a6t, p)) : Int(my * mod_pos(-a3t * half, p));
          cur.rst(0, 0, tt);
          my *= p;
          ++iy;
          a2t = cur.c.a2 / p;
          a3t = cur.c.a3 / my;
          a4t = cur.c.a4 / (p * mx);
          a6t = cur.c.a6 / (mx * my);
          if (pdiv(a4t * a4t - 4 * a6t * a2t)) {
            Int rr2 = p == 2 ? Int(mx * mod_pos(a6t * pinv(a2t), p)) : Int(mx * mod_pos(-a4t * pinv(2 * a2t), p));
            cur.rst(rr2, 0, 0);
            mx *= p;
            ++ix;
          } else {
            cp = detail::quad_has_root(a2t, a4t, a6t, p) ? 4 : 2;
            break;
          }
        } else {
          cp = detail::quad_has_root(1, a3t, -a6t, p) ? 4 : 2;
          break;
        }
      }
      return finish({Kodaira::Kind::InStar, ix + iy - 5}, vpd - ix - iy + 1, cp, std::nullopt);
    }

    // sw == 3: triple root moved to T = 0
    {
      Int rr;
      if (p == 2) rr = b;
      else if (p == 3) rr = mod_pos(-d, p);
      else rr = -b * pinv(3);
      cur.rst(p * mod_pos(rr, p), 0, 0);
    }
    const Int x3t = cur.c.a3 / p2, x6t = cur.c.a6 / p4;
    if (!pdiv(x3t * x3t + 4 * x6t)) {
      const int cp = detail::quad_has_root(1, x3t, -x6t, p) ? 3 : 1;
      return finish({Kodaira::Kind::IVStar, 0}, vpd - 6, cp, std::nullopt);
    }
    {
      Int tt = p == 2 ? Int(-p2 * mod_pos(x6t, p)) : Int(p2 * mod_pos(-x3t * half, p));
      cur.rst(0, 0, tt);
    }
    if (pval(cur.c.a4) < 4) return finish({Kodaira::Kind::IIIStar, 0}, vpd - 7, 2, std::nullopt);
    if (pval(cur.c.a6) < 6) return finish({Kodaira::Kind::IIStar, 0}, vpd - 8, 1, std::nullopt);

    // not minimal: divide through by p
    cur.scale(p);
  }
}

/// Model with a1, a3 in {0,1} and a2 in {-1,0,1}, isomorphic over Z.
inline std::pair<WeierstrassModel, Isomorphism> reduced_model(const WeierstrassModel& w) {
  const Int s = -floor_div(w.a1, 2);
  const Int y = w.a2 - s * w.a1 - s * s;
  const Int r = -floor_div(y + 1, 3);
  const Int t = -floor_div(w.a3 + r * w.a1, 2);
  Isomorphism iso{Rat(1), Rat(r), Rat(s), Rat(t)};
  return {iso.apply(w), iso};
}

struct MinimalModel {
  WeierstrassModel model;
  Isomorphism iso;  // input -> model
  std::vector<KodairaData> local;  // one entry per prime dividing the minimal discriminant
};

/// Global minimal model over Q (reduced form), by local minimalization at each bad prime.
inline MinimalModel global_minimal_model(const WeierstrassModel& w) {
  const Int disc = discriminant(w);
  MinimalModel out{w, Isomorphism::identity(), {}};
  for (const Int& p : prime_factors(disc)) {
    auto kd = tate_algorithm(out.model, p);
    if (!kd.to_minimal.is_identity() && kd.to_minimal.u != 1) {
      out.model = kd.to_minimal.apply(out.model);
      out.iso = out.iso.then(kd.to_minimal);
    }
  }
  auto [red, iso] = reduced_model(out.model);
  out.model = red;
  out.iso = out.iso.then(iso);
  const Int mdisc = discriminant(out.model);
  if (mdisc != 1 && mdisc != -1) {
    for (const Int& p : prime_factors(mdisc)) out.local.push_back(tate_algorithm(out.model, p));
  }
  return out;
}

inline bool is_minimal_at(const WeierstrassModel& w, const Int& p) { return tate_algorithm(w, p).to_minimal.u == 1; }

}  // namespace rootsign::ell
