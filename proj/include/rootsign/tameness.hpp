#pragma once

#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rootsign/ell/reduction.hpp"
#include "rootsign/ell/tate.hpp"
#include "rootsign/ell/torsion.hpp"
#include "rootsign/json_io.hpp"

namespace rootsign::tame {

using ell::Int;
using ell::RationalPoint;
using ell::WeierstrassModel;

struct PrimeVerdict {
  std::int64_t p = 0;
  std::string reduction;  // Kodaira symbol
  std::string reduction_class;
  bool condition_i = false;   // good or multiplicative
  bool condition_ii = false;  // p-Sylow points reduce to distinct smooth points
  std::vector<RationalPoint> sylow;
  std::vector<std::string> reductions;  // reduced p-Sylow points, same order as `sylow`
  std::string detail;

  bool ok() const { return condition_i && condition_ii; }
};

struct TamenessReport {
  WeierstrassModel curve;
  std::vector<RationalPoint> subgroup;
  std::vector<int> structure;
  bool structural = true;  // the two cyclic factors have coprime orders
  std::vector<PrimeVerdict> primes;
  bool overall = true;

  std::vector<std::int64_t> failing_primes() const {
    std::vector<std::int64_t> out;
    for (const auto& v : primes)
      if (!v.ok()) out.push_back(v.p);
    return out;
  }

  std::string describe() const {
    std::string s = overall ? "numerically tame" : "not numerically tame";
    for (const auto& v : primes) {
      s += "; p=" + std::to_string(v.p) + ": " + v.reduction + (v.condition_i ? "" : " (fails i)") +
           (v.condition_ii ? "" : " (fails ii: " + v.detail + ")");
    }
    if (!structural) s += "; invariant factors not coprime";
    return s;
  }
};

namespace detail {

inline std::vector<std::int64_t> primes_dividing(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_power_of(std::int64_t n, std::int64_t p) {
  while (n % p == 0) n /= p;
  return n == 1;
}

}  // namespace detail

/// Tameness criteria for the subgroup generated by `generators` acting on the minimal model `w`.
inline TamenessReport tameness_check(const WeierstrassModel& w, const std::vector<RationalPoint>& generators) {
  if (!(ell::global_minimal_model(w).iso.u == 1)) fail(ErrorKind::not_minimal, w.to_string() + " is not a global minimal model");
  TamenessReport r;
  r.curve = w;
  r.subgroup = ell::generated_subgroup(w, generators);
  r.structure = ell::subgroup_structure(w, r.subgroup);
  r.structural = r.structure.size() < 2 || std::gcd(r.structure[0], r.structure[1]) == 1;

  const auto order = static_cast<std::int64_t>(r.subgroup.size());
  for (std::int64_t p : detail::primes_dividing(order)) {
    PrimeVerdict v;
    v.p = p;
    const auto k = ell::tate_algorithm(w, Int(p));
    v.reduction = k.type.symbol();
    v.reduction_class = k.reduction_class();
    v.condition_i = !k.type.is_additive();
    for (const auto& P : r.subgroup) {
      const auto n = ell::point_order(w, P, 12);
      if (n && detail::is_power_of(*n, p)) v.sylow.push_back(P);
    }
    std::set<std::array<std::int64_t, 3>> seen;
    v.condition_ii = true;
    for (const auto& P : v.sylow) {
      const auto red = ell::reduce_point(w, P, p);
      v.reductions.push_back(red.to_string());
      if (!red.smooth) {
        v.condition_ii = false;
        v.detail = P.to_string() + " reduces to a singular point";
      } else if (!seen.insert(red.xyz).second) {
        v.condition_ii = false;
        v.detail = P.to_string() + " coalesces with another point";
      }
    }
    r.primes.push_back(std::move(v));
  }
  r.overall = r.structural;
  for (const auto& v : r.primes) r.overall = r.overall && v.ok();
  return r;
}

inline io::json to_json(const TamenessReport& r) {
  io::json primes = io::json::array();
  for (const auto& v : r.primes) {
    io::json sylow = io::json::array(), red = io::json::array();
    for (const auto& P : v.sylow) sylow.push_back(P.to_string());
    for (const auto& s : v.reductions) red.push_back(s);
    primes.push_back({{"p", v.p},
                      {"reduction", v.reduction},
                      {"reduction_class", v.reduction_class},
                      {"condition_i", v.condition_i},
                      {"condition_ii", v.condition_ii},
                      {"sylow", sylow},
                      {"reduced", red},
                      {"detail", v.detail}});
  }
  io::json pts = io::json::array();
  for (const auto& P : r.subgroup) pts.push_back(P.to_string());
  return {{"curve", r.curve.to_string()}, {"subgroup", pts},   {"structure", r.structure},
          {"structural", r.structural},   {"primes", primes}, {"overall", r.overall}};
}

inline TamenessReport tameness_from_json(const io::json& j, const std::string& where = "") {
  auto point = [](const io::json& x, const std::string& at) {
    const auto text = io::as_string(x, at);
    try {
      return ell::parse_point(text);
    } catch (const Error& e) {
      io::parse_fail(at, e.what());
    }
  };
  io::Fields f(j, where);
  TamenessReport r;
  const auto curve = io::as_string(f.required("curve"), f.at("curve"));
  try {
    r.curve = ell::parse_model(curve);
  } catch (const Error& e) {
    io::parse_fail(f.at("curve"), e.what());
  }
  const auto& pts = io::as_array(f.required("subgroup"), f.at("subgroup"));
  for (std::size_t i = 0; i < pts.size(); ++i) r.subgroup.push_back(point(pts[i], f.at("subgroup") + "/" + std::to_string(i)));
  for (auto n : io::as_int_array(f.required("structure"), f.at("structure"))) r.structure.push_back(static_cast<int>(n));
  r.structural = io::as_bool(f.required("structural"), f.at("structural"));
  const auto& primes = io::as_array(f.required("primes"), f.at("primes"));
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const std::string at = f.at("primes") + "/" + std::to_string(i);
    io::Fields g(primes[i], at);
    PrimeVerdict v;
    v.p = io::as_int(g.required("p"), g.at("p"));
    v.reduction = io::as_string(g.required("reduction"), g.at("reduction"));
    v.reduction_class = io::as_string(g.required("reduction_class"), g.at("reduction_class"));
    v.condition_i = io::as_bool(g.required("condition_i"), g.at("condition_i"));
    v.condition_ii = io::as_bool(g.required("condition_ii"), g.at("condition_ii"));
    const auto& syl = io::as_array(g.required("sylow"), g.at("sylow"));
    for (std::size_t k = 0; k < syl.size(); ++k) v.sylow.push_back(point(syl[k], g.at("sylow") + "/" + std::to_string(k)));
    const auto& red = io::as_array(g.required("reduced"), g.at("reduced"));
    for (std::size_t k = 0; k < red.size(); ++k) v.reductions.push_back(io::as_string(red[k], g.at("reduced") + "/" + std::to_string(k)));
    v.detail = io::as_string(g.required("detail"), g.at("detail"));
    g.finish();
    r.primes.push_back(std::move(v));
  }
  r.overall = io::as_bool(f.required("overall"), f.at("overall"));
  f.finish();
  return r;
}

}  // namespace rootsign::tame
