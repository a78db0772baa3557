#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "rootsign/ell/reduction.hpp"

namespace oracles {

using rootsign::ell::Int;
using rootsign::ell::WeierstrassModel;
using rootsign::ell::mod_small;

// brute-force reduction class from point counts over F_p: the smooth locus has
// p-1 points (split), p+1 (nonsplit) or p (additive); no singular point means good
inline std::string brute_reduction_class(const WeierstrassModel& w, std::int64_t p) {
  const std::int64_t a[5] = {mod_small(w.a1, p), mod_small(w.a2, p), mod_small(w.a3, p), mod_small(w.a4, p), mod_small(w.a6, p)};
  std::int64_t total = 1, singular = 0;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y) {
      auto m = [&](std::int64_t v) { return ((v % p) + p) % p; };
      if (m(y * y + a[0] * x * y + a[2] * y - x * x * x - a[1] * x * x - a[3] * x - a[4]) != 0) continue;
      ++total;
      if (m(a[0] * y - 3 * x * x - 2 * a[1] * x - a[3]) == 0 && m(2 * y + a[0] * x + a[2]) == 0) ++singular;
    }
  if (singular == 0) return "good";
  const std::int64_t ns = total - singular;
  if (ns == p - 1) return "split multiplicative";
  if (ns == p + 1) return "nonsplit multiplicative";
  if (ns == p) return "additive";
  return "inconsistent";
}

inline std::int64_t count_points(const WeierstrassModel& w, std::int64_t p) {
  std::int64_t n = 1;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y) {
      const Int v = Int(y) * y + w.a1 * x * y + w.a3 * y - Int(x) * x * x - w.a2 * x * x - w.a4 * x - w.a6;
      if (mod_small(v, p) == 0) ++n;
    }
  return n;
}

// plain complex-double Gauss sum over a prime field, generator found by direct powering
inline std::complex<double> brute_gauss(std::int64_t p, std::int64_t n, std::int64_t k) {
  std::int64_t g = 0;
  for (std::int64_t c = 2; c < p || p == 2; ++c) {
    if (p == 2) { g = 1; break; }
    std::int64_t x = 1, ord = 0;
    do { x = x * c % p; ++ord; } while (x != 1);
    if (ord == p - 1) { g = c; break; }
  }
  std::complex<double> s = 0;
  std::int64_t x = 1;
  const double tp = 2 * M_PI;
  for (std::int64_t l = 0; l < p - 1; ++l) {
    s += std::polar(1.0, tp * double(k * l % n) / double(n)) * std::polar(1.0, tp * double(x) / double(p));
    x = x * g % p;
  }
  return s;
}

}  // namespace oracles

using oracles::brute_gauss;
using oracles::brute_reduction_class;
using oracles::count_points;
