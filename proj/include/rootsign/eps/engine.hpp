#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "rootsign/exact/character.hpp"
#include "rootsign/fiber/fiber.hpp"
#include "rootsign/group/virtual_rep.hpp"

namespace rootsign::eps {

using exact::CycloValue;
using exact::NormalizedValue;
using fiber::CrossingPoint;
using fiber::FiberComponent;
using fiber::FiberDescription;
using group::VirtualRep;
using i64 = std::int64_t;

struct Factor {
  std::string name;
  NormalizedValue value;
};

struct LocalFactor {
  i64 p = 0;
  NormalizedValue value;
  int sign = 1;
  std::string path;  // "empty", "shortcut" or "full"
  std::vector<Factor> breakdown;
};

/// epsilon(y, V) = det(V^{I_x})(-F_x).
inline CycloValue eps_point(const VirtualRep& v, const group::Subgroup& inertia, const group::GroupElement& frob) {
  return group::det_eval_minus_frobenius(v, inertia, frob);
}

namespace detail {

inline void need(bool have, const std::string& field) {
  if (!have) fail(ErrorKind::missing_local_data, "missing " + field);
}

inline std::string crossing_field(const CrossingPoint& z, const char* name) { return "crossings/" + std::to_string(z.id) + "/" + name; }
inline std::string component_field(const FiberComponent& c, const char* name) { return "components/" + std::to_string(c.id) + "/" + name; }

inline const group::Subgroup& component_inertia(const FiberComponent& c) {
  need(c.inertia.has_value(), component_field(c, "inertia"));
  return *c.inertia;
}

}  // namespace detail

/// psi composed with the tame inertia map k(z)^* -> I_z.
inline exact::MultCharacter local_character(const FiberDescription& fd, const CrossingPoint& z, const group::GCharacter& psi) {
  detail::need(z.tame_generator.has_value(), detail::crossing_field(z, "tame_generator"));
  const auto field = exact::FiniteField::get(fd.p, z.deg);
  const i64 n = fd.group.exponent();
  const i64 e = psi.value_exponent(fd.group, *z.tame_generator);
  if (e == 0) return exact::MultCharacter::trivial(field);
  const i64 g = std::gcd(e, n);
  return {field, n / g, e / g};
}

/// epsilon_{0,z}(C_i, V^{I_i}) as a normalized Gauss sum over k(z).
inline NormalizedValue eps0_crossing(const FiberDescription& fd, const FiberComponent& c, const CrossingPoint& z, const VirtualRep& v) {
  const VirtualRep w = group::invariants_under(v, detail::component_inertia(c));
  if (w.empty()) return NormalizedValue::one();
  detail::need(z.inertia.has_value(), detail::crossing_field(z, "inertia"));
  bool unramified = true;
  for (const auto& [chi, m] : w.terms()) unramified = unramified && chi.trivial_on(fd.group, *z.inertia);
  if (unramified) return NormalizedValue::one();
  if (!w.det().is_trivial())
    fail(ErrorKind::nontrivial_det, "det(V^I) = " + w.det().to_string() + " on component " + std::to_string(c.id) + " is not trivial");
  std::vector<std::pair<exact::MultCharacter, i64>> parts;
  for (const auto& [chi, m] : w.terms()) parts.emplace_back(local_character(fd, z, chi), m);
  return exact::gauss_sum_virtual(parts);
}

/// det(V^{I_i})(delta_{C_i}), with delta given by its units a_x at the crossings of C_i.
inline CycloValue det_on_delta(const FiberDescription& fd, const FiberComponent& c, const VirtualRep& v) {
  const auto d = group::invariants_under(v, detail::component_inertia(c)).det();
  if (d.is_trivial()) return CycloValue::integer(1);
  detail::need(c.delta_data.has_value(), detail::component_field(c, "delta_data"));
  CycloValue acc = CycloValue::integer(1);
  for (int zid : fd.crossings_on(c.id)) {
    const auto& z = fd.crossing(zid);
    const fiber::DeltaEntry* entry = nullptr;
    for (const auto& e : *c.delta_data)
      if (e.crossing == zid) entry = &e;
    detail::need(entry != nullptr, detail::component_field(c, "delta_data") + " entry for crossing " + std::to_string(zid));
    const auto field = exact::FiniteField::get(fd.p, z.deg);
    const auto a = field->from_coords(entry->unit);
    if (a.is_zero()) fail(ErrorKind::zero_argument, "delta unit at crossing " + std::to_string(zid) + " is zero");
    const auto chi = entry->chi ? exact::MultCharacter(field, entry->chi->order, entry->chi->exp) : local_character(fd, z, d);
    acc = acc * chi(a);
  }
  return acc;
}

struct RatioOptions {
  bool allow_shortcut = true;
  i64 max_group = 10000;
};

/// epsilon(D'_v, V)^-1 epsilon(Y_v, V) as a product over components and crossings.
inline LocalFactor fibral_ratio(const FiberDescription& fd, const VirtualRep& v, const RatioOptions& opt = {}) {
  if (!(fd.group == v.group())) fail(ErrorKind::group_mismatch, "fiber group " + fd.group.to_string() + " vs representation group " + v.group().to_string());
  const auto report = fiber::validate_fiber(fd);
  if (!report.valid()) fail(ErrorKind::invalid_fiber, report.describe());
  LocalFactor out;
  out.p = fd.p;
  if (fd.crossings.empty()) {
    out.path = "empty";
    out.breakdown.push_back({"no crossings", NormalizedValue::one()});
    return out;
  }
  if (opt.allow_shortcut && group::det_trivial_all_subgroups(v, opt.max_group).trivial) {
    out.path = "shortcut";
    for (const auto& c : fd.components) out.breakdown.push_back({"det on delta, C" + std::to_string(c.id), NormalizedValue::one()});
    for (const auto& z : fd.crossings) {
      out.breakdown.push_back({"eps0, z" + std::to_string(z.id) + " on C" + std::to_string(z.between[0]), NormalizedValue::one()});
      out.breakdown.push_back({"eps0, z" + std::to_string(z.id) + " on C" + std::to_string(z.between[1]), NormalizedValue::one()});
      out.breakdown.push_back({"eps, z" + std::to_string(z.id), NormalizedValue::one()});
    }
    return out;
  }

  out.path = "full";
  std::vector<std::string> missing;
  auto attempt = [&](const std::string& name, auto&& compute) {
    try {
      NormalizedValue x = compute();
      out.value = out.value * x;
      out.breakdown.push_back({name, std::move(x)});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::missing_local_data) throw;
      std::string m = e.what();
      const std::string prefix = std::string(to_string(ErrorKind::missing_local_data)) + ": missing ";
      if (m.rfind(prefix, 0) == 0) m = m.substr(prefix.size());
      if (std::find(missing.begin(), missing.end(), m) == missing.end()) missing.push_back(m);
    }
  };
  for (const auto& c : fd.components)
    attempt("det on delta, C" + std::to_string(c.id), [&] { return NormalizedValue(det_on_delta(fd, c, v)); });
  for (const auto& z : fd.crossings) {
    for (int i : z.between)
      attempt("eps0, z" + std::to_string(z.id) + " on C" + std::to_string(i), [&] { return eps0_crossing(fd, fd.component(i), z, v); });
    if (!z.frobenius) attempt("", [&]() -> NormalizedValue { detail::need(false, detail::crossing_field(z, "frobenius")); return {}; });
    attempt("eps, z" + std::to_string(z.id), [&] {
      detail::need(z.inertia.has_value(), detail::crossing_field(z, "inertia"));
      detail::need(z.frobenius.has_value(), detail::crossing_field(z, "frobenius"));
      return NormalizedValue(eps_point(v, *z.inertia, *z.frobenius));
    });
  }
  if (!missing.empty()) {
    std::string s = "fiber at p = " + std::to_string(fd.p) + " needs data: ";
    for (std::size_t i = 0; i < missing.size(); ++i) s += (i ? ", " : "") + missing[i];
    fail(ErrorKind::missing_local_data, s);
  }
  const bool plus = out.value == NormalizedValue::one();
  const bool minus = out.value == NormalizedValue(CycloValue::integer(-1));
  if (!plus && !minus) fail(ErrorKind::not_real, "fibral ratio at p = " + std::to_string(fd.p) + " is " + out.value.describe() + ", not +-1");
  out.sign = plus ? 1 : -1;
  return out;
}

struct ArchimedeanContext {
  bool pipeline = true;
  std::optional<int> supplied;
};

inline int eps_infinity(const ArchimedeanContext& ctx) {
  if (ctx.supplied) {
    if (*ctx.supplied != 1 && *ctx.supplied != -1) fail(ErrorKind::missing_input, "eps_infinity must be +1 or -1");
    return *ctx.supplied;
  }
  if (ctx.pipeline) return 1;
  fail(ErrorKind::missing_input, "manual mode needs an archimedean sign");
}

/// prod_i kappa_i^{c_i} from the declared component characters.
inline NormalizedValue component_diagnostic(const FiberDescription& fd) {
  NormalizedValue acc;
  for (const auto& c : fd.components) {
    if (c.euler_c == 0) continue;
    detail::need(c.kappa_data.has_value(), detail::component_field(c, "kappa_data"));
    const auto field = exact::FiniteField::get(fd.p, c.f);
    std::vector<std::pair<exact::MultCharacter, i64>> parts;
    for (const auto& k : *c.kappa_data) parts.emplace_back(exact::MultCharacter(field, k.chi.order, k.chi.exp), k.mult);
    acc = acc * exact::gauss_sum_virtual(parts).pow(c.euler_c);
  }
  return acc;
}

}  // namespace rootsign::eps
