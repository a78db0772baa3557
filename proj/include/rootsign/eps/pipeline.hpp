#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rootsign/ell/torsion.hpp"
#include "rootsign/ell/velu.hpp"
#include "rootsign/eps/engine.hpp"
#include "rootsign/tameness.hpp"

namespace rootsign::eps {

struct Job {
  ell::WeierstrassModel curve;
  std::vector<ell::RationalPoint> kernel;  // generators
  VirtualRep rep;
  std::map<i64, FiberDescription> fibers;  // manual fibers by prime
  std::optional<int> eps_infinity;
  i64 max_group = 10000;
};

struct SubgroupDet {
  std::string subgroup;
  bool det_trivial = true;
  friend bool operator==(const SubgroupDet&, const SubgroupDet&) = default;
};

struct PlaceReport {
  i64 p = 0;
  std::string x_type, x_class, y_type, y_class;
  FiberDescription fiber;
  LocalFactor ratio;
};

struct EpsilonReport {
  group::RepValidation validation;
  std::string rep;
  std::string curve, minimal_curve, disc_x;
  std::vector<std::string> torsion;
  tame::TamenessReport tame;
  std::string quotient, disc_y;
  std::vector<SubgroupDet> subgroups;
  std::vector<PlaceReport> places;
  int eps_infinity = 1;
  int W = 1;
  NormalizedValue epsilon;
  std::vector<std::string> assumptions;
};

namespace detail {

/// Invariant factors d_1 | d_2 | ... of Z/n_1 x ... x Z/n_r, without the 1s.
inline std::vector<i64> invariant_factors(const std::vector<i64>& factors) {
  std::map<i64, std::vector<i64>> by_prime;  // p -> prime-power parts
  for (i64 n : factors) {
    for (i64 p = 2; p * p <= n; ++p) {
      if (n % p) continue;
      i64 q = 1;
      while (n % p == 0) n /= p, q *= p;
      by_prime[p].push_back(q);
    }
    if (n > 1) by_prime[n].push_back(n);
  }
  std::size_t len = 0;
  for (auto& [p, v] : by_prime) {
    std::sort(v.begin(), v.end(), std::greater<>());
    len = std::max(len, v.size());
  }
  std::vector<i64> out(len, 1);
  for (const auto& [p, v] : by_prime)
    for (std::size_t i = 0; i < v.size(); ++i) out[len - 1 - i] *= v[i];
  return out;
}

}  // namespace detail

inline EpsilonReport global_sign(const Job& job) {
  EpsilonReport r;
  r.validation = job.rep.validate();
  r.rep = job.rep.to_string();
  if (!r.validation.ok()) fail(ErrorKind::not_valid_rep, "V = " + r.rep + ": " + r.validation.describe());
  const auto& G = job.rep.group();
  if (G.order() > job.max_group) fail(ErrorKind::group_too_large, "|G| = " + std::to_string(G.order()) + " exceeds --max-group");

  r.curve = job.curve.to_string();
  for (const auto& P : job.kernel) ell::require_on_curve(job.curve, P);
  const auto mm = ell::global_minimal_model(job.curve);
  const auto& X = mm.model;
  std::vector<ell::RationalPoint> kernel;
  for (const auto& P : job.kernel) kernel.push_back(mm.iso.map(P));
  r.minimal_curve = X.to_string();
  r.disc_x = ell::str(ell::discriminant(X));
  for (const auto& P : ell::torsion_subgroup(X).points) r.torsion.push_back(P.to_string());

  r.tame = tame::tameness_check(X, kernel);
  std::vector<i64> k_struct(r.tame.structure.begin(), r.tame.structure.end());
  if (detail::invariant_factors(G.factors()) != k_struct)
    fail(ErrorKind::group_mismatch, "representation group " + G.to_string() + " does not match the kernel, of order " + std::to_string(r.tame.subgroup.size()));
  if (!r.tame.overall) fail(ErrorKind::not_tame, r.tame.describe());

  const auto Y = ell::velu_quotient(X, kernel);
  r.quotient = Y.to_string();
  r.disc_y = ell::str(ell::discriminant(Y));

  const auto dets = group::det_trivial_all_subgroups(job.rep, job.max_group);
  for (const auto& h : group::all_subgroups(G, job.max_group))
    r.subgroups.push_back({h.to_string(), group::invariants_under(job.rep, h).det().is_trivial()});

  std::set<i64> places;
  for (const auto& p : ell::prime_factors(ell::discriminant(X) * ell::discriminant(Y) * ell::Int(G.order())))
    places.insert(static_cast<i64>(p));
  for (const auto& [p, fd] : job.fibers)
    if (!places.count(p)) fail(ErrorKind::invalid_fiber, "manual fiber at p = " + std::to_string(p) + " which is not a bad place");

  r.assumptions.push_back("the horizontal factor epsilon(D',V) is positive and is not computed");
  r.assumptions.push_back("places outside disc(X) disc(Y) |G| have smooth irreducible fibers and contribute 1");
  if (dets.trivial) r.assumptions.push_back("det(V^I) is trivial for every subgroup I, so crossing data is not needed");

  int sign = 1;
  NormalizedValue value;
  for (i64 p : places) {
    PlaceReport pr;
    pr.p = p;
    const auto kx = ell::tate_algorithm(X, ell::Int(p));
    const auto ky = ell::tate_algorithm(Y, ell::Int(p));
    pr.x_type = kx.type.symbol();
    pr.x_class = kx.reduction_class();
    pr.y_type = ky.type.symbol();
    pr.y_class = ky.reduction_class();
    if (ky.type.is_additive())
      fail(ErrorKind::unsupported_reduction, "quotient has additive reduction " + ky.type.symbol() + " at p = " + std::to_string(p));
    if (auto it = job.fibers.find(p); it != job.fibers.end()) {
      pr.fiber = it->second;
      if (pr.fiber.p != p) fail(ErrorKind::invalid_fiber, "fiber supplied for p = " + std::to_string(p) + " declares p = " + std::to_string(pr.fiber.p));
      r.assumptions.push_back("fiber at p = " + std::to_string(p) + " supplied as input");
    } else {
      pr.fiber = fiber::build_fiber(ky, G);
    }
    pr.ratio = fibral_ratio(pr.fiber, job.rep, {true, job.max_group});
    sign *= pr.ratio.sign;
    value = value * pr.ratio.value;
    r.places.push_back(std::move(pr));
  }
  r.eps_infinity = eps_infinity({true, job.eps_infinity});
  if (job.eps_infinity) r.assumptions.push_back("archimedean sign " + std::to_string(*job.eps_infinity) + " supplied as input");
  else r.assumptions.push_back("archimedean sign +1: G acts trivially on the Hodge groups of an elliptic curve");
  r.W = r.eps_infinity * sign;
  r.epsilon = NormalizedValue(CycloValue::integer(r.eps_infinity)) * value;
  return r;
}

// JSON

inline io::json value_to_json(const NormalizedValue& v) {
  io::json scale = io::json::object();
  for (const auto& [b, e] : v.scale()) scale[std::to_string(b)] = e;
  return {{"order", v.algebraic().order()}, {"coeffs", v.algebraic().coeffs()}, {"twice_log_scale", scale}, {"text", v.describe()}};
}

inline NormalizedValue value_from_json(const io::json& j, const std::string& where) {
  io::Fields f(j, where);
  const i64 m = io::as_int(f.required("order"), f.at("order"));
  if (m < 1 || m > 100000) io::parse_fail(f.at("order"), "bad cyclotomic order");
  const auto coeffs = io::as_int_array(f.required("coeffs"), f.at("coeffs"));
  std::map<i64, int> scale;
  const auto& s = f.required("twice_log_scale");
  if (!s.is_object()) io::parse_fail(f.at("twice_log_scale"), "expected an object");
  for (const auto& [k, e] : s.items()) {
    i64 base = 0;
    try {
      base = std::stoll(k);
    } catch (const std::exception&) {
      io::parse_fail(f.at("twice_log_scale") + "/" + k, "key is not an integer");
    }
    scale[base] = static_cast<int>(io::as_int(e, f.at("twice_log_scale") + "/" + k));
  }
  if (const io::json* t = f.optional("text")) io::as_string(*t, f.at("text"));
  f.finish();
  return {CycloValue::from_exponent_coeffs(static_cast<int>(m), coeffs), scale};
}

inline io::json to_json(const LocalFactor& lf) {
  io::json b = io::json::array();
  for (const auto& x : lf.breakdown) b.push_back({{"name", x.name}, {"value", value_to_json(x.value)}});
  return {{"p", lf.p}, {"ratio", lf.sign}, {"value", value_to_json(lf.value)}, {"path", lf.path}, {"breakdown", b}};
}

inline LocalFactor local_factor_from_json(const io::json& j, const std::string& where) {
  io::Fields f(j, where);
  LocalFactor lf;
  lf.p = io::as_int(f.required("p"), f.at("p"));
  lf.sign = static_cast<int>(io::as_int(f.required("ratio"), f.at("ratio")));
  if (lf.sign != 1 && lf.sign != -1) io::parse_fail(f.at("ratio"), "expected +1 or -1");
  lf.value = value_from_json(f.required("value"), f.at("value"));
  lf.path = io::as_string(f.required("path"), f.at("path"));
  const auto& b = io::as_array(f.required("breakdown"), f.at("breakdown"));
  for (std::size_t i = 0; i < b.size(); ++i) {
    const std::string at = f.at("breakdown") + "/" + std::to_string(i);
    io::Fields g(b[i], at);
    Factor x{io::as_string(g.required("name"), g.at("name")), value_from_json(g.required("value"), g.at("value"))};
    g.finish();
    lf.breakdown.push_back(std::move(x));
  }
  f.finish();
  return lf;
}

inline io::json to_json(const EpsilonReport& r) {
  io::json places = io::json::array(), subs = io::json::array();
  for (const auto& pr : r.places) {
    io::json j = to_json(pr.ratio);
    j["x_reduction"] = {{"type", pr.x_type}, {"class", pr.x_class}};
    j["y_reduction"] = {{"type", pr.y_type}, {"class", pr.y_class}};
    j["fiber"] = fiber::to_json(pr.fiber);
    places.push_back(j);
  }
  for (const auto& s : r.subgroups) subs.push_back({{"subgroup", s.subgroup}, {"det_trivial", s.det_trivial}});
  return {{"valid", r.validation.ok()},
          {"validation",
           {{"orthogonal", r.validation.orthogonal}, {"dimension_zero", r.validation.dimension_zero}, {"trivial_det", r.validation.trivial_det}}},
          {"rep", r.rep},
          {"curve", r.curve},
          {"minimal_curve", r.minimal_curve},
          {"disc_x", r.disc_x},
          {"torsion", r.torsion},
          {"tame", tame::to_json(r.tame)},
          {"quotient", r.quotient},
          {"disc_y", r.disc_y},
          {"subgroups", subs},
          {"places", places},
          {"eps_infinity", r.eps_infinity},
          {"W", r.W},
          {"epsilon", value_to_json(r.epsilon)},
          {"assumptions", r.assumptions}};
}

inline EpsilonReport epsilon_report_from_json(const io::json& j, const std::string& where = "") {
  io::Fields f(j, where);
  EpsilonReport r;
  auto str = [&](const char* k) { return io::as_string(f.required(k), f.at(k)); };
  auto strs = [&](const char* k) {
    std::vector<std::string> out;
    const auto& a = io::as_array(f.required(k), f.at(k));
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(io::as_string(a[i], f.at(k) + "/" + std::to_string(i)));
    return out;
  };
  const bool valid = io::as_bool(f.required("valid"), f.at("valid"));
  {
    io::Fields v(f.required("validation"), f.at("validation"));
    r.validation.orthogonal = io::as_bool(v.required("orthogonal"), v.at("orthogonal"));
    r.validation.dimension_zero = io::as_bool(v.required("dimension_zero"), v.at("dimension_zero"));
    r.validation.trivial_det = io::as_bool(v.required("trivial_det"), v.at("trivial_det"));
    v.finish();
  }
  if (valid != r.validation.ok()) io::parse_fail(f.at("valid"), "disagrees with validation");
  r.rep = str("rep");
  r.curve = str("curve");
  r.minimal_curve = str("minimal_curve");
  r.disc_x = str("disc_x");
  r.torsion = strs("torsion");
  r.tame = tame::tameness_from_json(f.required("tame"), f.at("tame"));
  r.quotient = str("quotient");
  r.disc_y = str("disc_y");
  const auto& subs = io::as_array(f.required("subgroups"), f.at("subgroups"));
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string at = f.at("subgroups") + "/" + std::to_string(i);
    io::Fields g(subs[i], at);
    r.subgroups.push_back({io::as_string(g.required("subgroup"), g.at("subgroup")), io::as_bool(g.required("det_trivial"), g.at("det_trivial"))});
    g.finish();
  }
  const auto& places = io::as_array(f.required("places"), f.at("places"));
  for (std::size_t i = 0; i < places.size(); ++i) {
    const std::string at = f.at("places") + "/" + std::to_string(i);
    io::json rest = places[i];
    if (!rest.is_object()) io::parse_fail(at, "expected an object");
    PlaceReport pr;
    auto reduction = [&](const char* key, std::string& type, std::string& cls) {
      if (!rest.contains(key)) io::parse_fail(at + "/" + key, "missing");
      io::Fields g(rest[key], at + "/" + key);
      type = io::as_string(g.required("type"), g.at("type"));
      cls = io::as_string(g.required("class"), g.at("class"));
      g.finish();
      rest.erase(key);
    };
    reduction("x_reduction", pr.x_type, pr.x_class);
    reduction("y_reduction", pr.y_type, pr.y_class);
    if (!rest.contains("fiber")) io::parse_fail(at + "/fiber", "missing");
    pr.fiber = fiber::fiber_from_json(rest["fiber"], at + "/fiber");
    rest.erase("fiber");
    pr.ratio = local_factor_from_json(rest, at);
    r.places.push_back(std::move(pr));
  }
  r.eps_infinity = static_cast<int>(io::as_int(f.required("eps_infinity"), f.at("eps_infinity")));
  r.W = static_cast<int>(io::as_int(f.required("W"), f.at("W")));
  r.epsilon = value_from_json(f.required("epsilon"), f.at("epsilon"));
  r.assumptions = strs("assumptions");
  f.finish();
  return r;
}

}  // namespace rootsign::eps
