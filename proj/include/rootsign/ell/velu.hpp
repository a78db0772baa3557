#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "rootsign/ell/tate.hpp"
#include "rootsign/ell/torsion.hpp"

namespace rootsign::ell {

struct VeluResult {
  WeierstrassModel raw;    // integral model straight from the formulas
  WeierstrassModel model;  // global minimal, reduced
  int degree = 1;
};

/// Quotient of E by the finite subgroup K (given as its full element list).
inline VeluResult velu_quotient_full(const WeierstrassModel& w, const std::vector<RationalPoint>& kernel) {
  std::set<RationalPoint> K(kernel.begin(), kernel.end());
  K.insert(RationalPoint::at_infinity());
  for (const auto& P : K) {
    require_on_curve(w, P);
    for (const auto& Q : K) {
      if (!K.count(add(w, P, Q))) fail(ErrorKind::not_a_subgroup, "kernel is not closed under addition");
    }
  }

  const Rat a1(w.a1), a2(w.a2), a3(w.a3), a4(w.a4), a6(w.a6);
  Rat v = 0, wsum = 0;
  std::set<RationalPoint> used;
  for (const auto& Q : K) {
    if (Q.infinity || used.count(Q)) continue;
    const RationalPoint mQ = negate(w, Q);
    used.insert(Q);
    used.insert(mQ);
    const Rat gx = 3 * Q.x * Q.x + 2 * a2 * Q.x + a4 - a1 * Q.y;
    const Rat gy = -2 * Q.y - a1 * Q.x - a3;
    const bool order_two = mQ == Q;
    const Rat vq = order_two ? gx : Rat(2 * gx - a1 * gy);
    const Rat uq = gy * gy;
    v += vq;
    wsum += uq + Q.x * vq;
  }
  const Rat A4 = a4 - 5 * v;
  const Rat A6 = a6 - (a1 * a1 + 4 * a2) * v - 7 * wsum;

  // clear denominators with x -> x/u^2, y -> y/u^3
  Int scale = 1;
  for (const Int& p : prime_factors(Int(denominator(A4)) * Int(denominator(A6)))) {
    const int e4 = valuation(Int(denominator(A4)), p), e6 = valuation(Int(denominator(A6)), p);
    const int e = std::max((e4 + 3) / 4, (e6 + 5) / 6);
    scale *= boost::multiprecision::pow(p, static_cast<unsigned>(e));
  }
  Isomorphism clear{frac(1, scale), 0, 0, 0};
  const auto raw_coeffs = clear.apply(std::array<Rat, 5>{a1, a2, a3, A4, A6});
  WeierstrassModel raw{numerator(raw_coeffs[0]), numerator(raw_coeffs[1]), numerator(raw_coeffs[2]), numerator(raw_coeffs[3]),
                       numerator(raw_coeffs[4])};
  VeluResult out;
  out.raw = raw;
  out.model = global_minimal_model(raw).model;
  out.degree = static_cast<int>(K.size());
  return out;
}

inline WeierstrassModel velu_quotient(const WeierstrassModel& w, const std::vector<RationalPoint>& generators) {
  return velu_quotient_full(w, generated_subgroup(w, generators)).model;
}

}  // namespace rootsign::ell
