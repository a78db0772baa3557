#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "rootsign/ell/weierstrass.hpp"

namespace rootsign::ell {

struct TorsionData {
  std::vector<RationalPoint> points;  // sorted, O first
  std::vector<int> structure;         // invariant factors, e.g. {3} or {2,4}; empty for the trivial group

  int order() const { return static_cast<int>(points.size()); }

  bool contains(const RationalPoint& P) const { return std::find(points.begin(), points.end(), P) != points.end(); }

  std::string structure_string() const {
    if (structure.empty()) return "trivial";
    std::string s;
    for (std::size_t i = 0; i < structure.size(); ++i) s += (i ? " x " : "") + std::string("Z/") + std::to_string(structure[i]);
    return s;
  }
};

namespace detail {

// all integer roots of X^3 + A X + B
inline std::vector<Int> integer_cubic_roots(const Int& A, const Int& B) {
  auto f = [&](const Int& x) { return x * x * x + A * x + B; };
  const Int bound = 1 + std::max(abs_int(A), abs_int(B));
  // monotone pieces split at the critical points +-sqrt(-A/3)
  std::vector<std::pair<Int, Int>> pieces;
  if (A >= 0) {
    pieces.push_back({-bound, bound});
  } else {
    const Int c = isqrt(-A / 3);
    // the critical points are +-s with c <= s < c+1, so f is monotone on the integers of each piece
    pieces.push_back({-bound, -c - 1});
    pieces.push_back({-c, c});
    pieces.push_back({c + 1, bound});
  }
  std::set<Int> roots;
  for (auto [lo, hi] : pieces) {
    if (lo > hi) continue;
    // check a window around each end, then bisect the interior
    for (Int x = lo; x <= lo + 2 && x <= hi; ++x)
      if (f(x) == 0) roots.insert(x);
    for (Int x = hi; x >= hi - 2 && x >= lo; --x)
      if (f(x) == 0) roots.insert(x);
    Int a = lo, b = hi;
    const bool increasing = f(a) <= f(b);
    while (b - a > 1) {
      const Int m = floor_div(a + b, 2);
      const Int fm = f(m);
      if (fm == 0) {
        roots.insert(m);
        break;
      }
      if ((fm < 0) == increasing) a = m;
      else b = m;
    }
  }
  return {roots.begin(), roots.end()};
}

}  // namespace detail

/// Torsion subgroup by Nagell-Lutz on Y^2 = X^3 - 27 c4 X - 54 c6, with
/// X = 36x + 3b2 and Y = 108(2y + a1 x + a3).
inline TorsionData torsion_subgroup(const WeierstrassModel& w) {
  const auto inv = invariants(w);
  const Int A = -27 * inv.c4, B = -54 * inv.c6;
  const Int D = abs_int(4 * A * A * A + 27 * B * B);

  // Y = 0 or Y^2 | D
  std::vector<Int> ys{0};
  {
    std::vector<Int> divs{1};
    for (const auto& [p, e] : factorize(D)) {
      const std::size_t n = divs.size();
      Int pk = 1;
      for (int k = 1; 2 * k <= e; ++k) {
        pk *= p;
        for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
      }
    }
    for (const auto& d : divs) {
      ys.push_back(d);
      ys.push_back(-d);
    }
  }

  std::set<RationalPoint> found{RationalPoint::at_infinity()};
  for (const Int& Y : ys) {
    for (const Int& X : detail::integer_cubic_roots(A, B - Y * Y)) {
      const Rat x = frac(X - 3 * inv.b2, 36);
      const Rat y = (frac(Y, 108) - Rat(w.a1) * x - Rat(w.a3)) / 2;
      const RationalPoint P = RationalPoint::affine(x, y);
      if (!on_curve(w, P)) continue;
      if (point_order(w, P, 12)) found.insert(P);
    }
  }

  TorsionData out;
  out.points.assign(found.begin(), found.end());
  const int n = out.order();
  int two_torsion = 0;
  for (const auto& P : out.points) {
    if (!P.infinity && add(w, P, P).infinity) ++two_torsion;
  }
  if (n == 1) out.structure = {};
  else if (two_torsion == 3) out.structure = {2, n / 2};
  else out.structure = {n};
  return out;
}

/// Closure of a set of points under the group law (points must be torsion of order <= 12).
inline std::vector<RationalPoint> generated_subgroup(const WeierstrassModel& w, const std::vector<RationalPoint>& gens) {
  std::set<RationalPoint> H{RationalPoint::at_infinity()};
  for (const auto& g : gens) {
    require_on_curve(w, g);
    if (!point_order(w, g, 12)) fail(ErrorKind::not_torsion, g.to_string() + " has infinite order on " + w.to_string());
    if (H.count(g)) continue;
    std::set<RationalPoint> grown;
    RationalPoint m = RationalPoint::at_infinity();
    do {
      for (const auto& h : H) grown.insert(add(w, h, m));
      m = add(w, m, g);
    } while (!H.count(m));
    H = std::move(grown);
  }
  return {H.begin(), H.end()};
}

/// Invariant factors of a finite subgroup of E(Q) (cyclic or Z/2 x Z/2m).
inline std::vector<int> subgroup_structure(const WeierstrassModel& w, const std::vector<RationalPoint>& H) {
  const int n = static_cast<int>(H.size());
  if (n == 1) return {};
  int two = 0;
  for (const auto& P : H) {
    if (!P.infinity && add(w, P, P).infinity) ++two;
  }
  if (two == 3) return {2, n / 2};
  return {n};
}

}  // namespace rootsign::ell
