#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "rootsign/ell/weierstrass.hpp"

namespace rootsign::ell {

struct ReducedPoint {
  std::int64_t p = 0;
  std::array<std::int64_t, 3> xyz{0, 1, 0};  // normalized: last nonzero coordinate is 1
  bool on_curve = true;
  bool smooth = true;

  friend bool operator==(const ReducedPoint& a, const ReducedPoint& b) { return a.p == b.p && a.xyz == b.xyz; }

  std::string to_string() const {
    return "(" + std::to_string(xyz[0]) + ":" + std::to_string(xyz[1]) + ":" + std::to_string(xyz[2]) + ")";
  }
};

namespace detail {

inline std::array<std::int64_t, 3> normalize_projective(std::array<Int, 3> v, std::int64_t p) {
  std::array<std::int64_t, 3> r{};
  for (int i = 0; i < 3; ++i) r[static_cast<std::size_t>(i)] = mod_small(v[static_cast<std::size_t>(i)], p);
  for (int i = 2; i >= 0; --i) {
    const std::int64_t c = r[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const Int inv = boost::multiprecision::powm(Int(c), Int(p - 2), Int(p));
    for (auto& x : r) x = mod_small(Int(x) * inv, p);
    break;
  }
  return r;
}

}  // namespace detail

/// Reduction of (X:Y:Z) mod p, flagging whether it lands on a smooth point.
inline ReducedPoint reduce_point(const WeierstrassModel& w, const RationalPoint& P, std::int64_t p) {
  ReducedPoint out;
  out.p = p;
  const auto xyz = P.projective();
  out.xyz = detail::normalize_projective(xyz, p);
  const Int X = xyz[0], Y = xyz[1], Z = xyz[2];
  const Int F = Y * Y * Z + w.a1 * X * Y * Z + w.a3 * Y * Z * Z - X * X * X - w.a2 * X * X * Z - w.a4 * X * Z * Z - w.a6 * Z * Z * Z;
  const Int FX = w.a1 * Y * Z - 3 * X * X - 2 * w.a2 * X * Z - w.a4 * Z * Z;
  const Int FY = 2 * Y * Z + w.a1 * X * Z + w.a3 * Z * Z;
  const Int FZ = Y * Y + w.a1 * X * Y + 2 * w.a3 * Y * Z - w.a2 * X * X - 2 * w.a4 * X * Z - 3 * w.a6 * Z * Z;
  const Int pp(p);
  out.on_curve = mod_pos(F, pp) == 0;
  out.smooth = !(mod_pos(FX, pp) == 0 && mod_pos(FY, pp) == 0 && mod_pos(FZ, pp) == 0);
  return out;
}

}  // namespace rootsign::ell
