#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>

#include "rootsign/exact/character.hpp"
#include "rootsign/json_io.hpp"
#include "rootsign/p1/line.hpp"

namespace rootsign::p1 {

using exact::CycloValue;
using exact::MultCharacter;

/// Local data for a character of H^1(X mod D): a root of unity w (value on a degree-1
/// Frobenius away from D) and a character of the residue field at each point of D.
struct ChiData {
  i64 p = 2;
  i64 w_order = 1, w_exp = 0;
  std::map<ClosedPoint, MultCharacter> local;

  CycloValue w() const { return CycloValue::root(static_cast<int>(w_order), w_exp); }

  const MultCharacter& at(const ClosedPoint& x) const {
    auto it = local.find(x);
    if (it == local.end()) fail(ErrorKind::missing_local_data, "no local character at " + x.to_string(p));
    return it->second;
  }

  static ChiData trivial(const MarkedLine& X) {
    ChiData c;
    c.p = X.p;
    for (const auto& x : X.D) c.local.emplace(x, MultCharacter::trivial(residue_field(x, X.p)));
    return c;
  }
};

namespace detail {

inline CycloValue local_value(const ChiData& chi, const ClosedPoint& x, const FieldElement& a) {
  const auto& c = chi.at(x);
  if (!(*c.field() == *a.field())) fail(ErrorKind::invalid_field, "local character at " + x.to_string(chi.p) + " lives on the wrong field");
  return c(a);
}

}  // namespace detail

/// Value on the class of a closed point y off D. With the uniformizer conventions of
/// unit_part, the principal class of the minimal polynomial of y forces
/// chi(y) = w^deg(y) * prod_{x in D finite} chi_x(pi_y(x))^-1, and chi(inf) = w.
inline CycloValue point_value(const ChiData& chi, const ClosedPoint& y) {
  CycloValue v = chi.w().pow(y.degree());
  if (y.infinity) return v;
  for (const auto& [x, c] : chi.local) {
    if (x.infinity) continue;
    v = v * detail::local_value(chi, x, reduce_at(y.minpoly, x, chi.p)).pow(-1);
  }
  return v;
}

inline CycloValue eval_character_on_class(const ChiData& chi, const ZeroCycleClass& c) {
  CycloValue v = CycloValue::integer(1);
  for (const auto& [y, m] : c.offD) {
    if (chi.local.count(y)) fail(ErrorKind::wrong_divisor, "class has an off-D entry at a point of D");
    if (m != 0) v = v * point_value(chi, y).pow(m);
  }
  for (const auto& [x, a] : c.atD) {
    if (a.is_zero()) fail(ErrorKind::zero_argument, "class has a zero unit at " + x.to_string(chi.p));
    v = v * detail::local_value(chi, x, a);
  }
  return v;
}

struct ConsistencyResult {
  bool ok = true;
  std::optional<RationalFunction> witness;
  std::string detail;
  int checked = 0;
};

/// Samples functions that are units along D and checks the character kills their classes.
/// Constants come first: the class of a constant c is (c, ..., c) along D.
inline ConsistencyResult check_character_consistency(const ChiData& chi, const MarkedLine& X, int samples, std::uint64_t seed = 1) {
  X.validate();
  for (const auto& x : X.D) chi.at(x);
  for (const auto& [x, c] : chi.local)
    if (!X.in_D(x)) fail(ErrorKind::wrong_divisor, "local character at " + x.to_string(X.p) + " which is not on D");
  const i64 p = X.p;
  ConsistencyResult out;
  auto test = [&](const RationalFunction& f) {
    ++out.checked;
    const auto v = eval_character_on_class(chi, principal_class(X, f));
    if (v == CycloValue::integer(1)) return true;
    out.ok = false;
    out.witness = f;
    out.detail = "class of " + f.to_string() + " evaluates to " + v.to_string();
    return false;
  };
  const i64 g = FiniteField::get(p, 1)->generator().code();
  if (p > 2 && !test(RationalFunction::constant(g, p))) return out;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<i64> coeff(0, p - 1), deg(0, 3);
  auto unit_on_D = [&](const PolyFp& h) {
    for (const auto& x : X.D)
      if (!x.infinity && poly::rem(h, x.minpoly, p).empty()) return false;
    return true;
  };
  auto random_monic = [&](int d) {
    for (;;) {
      PolyFp h(static_cast<std::size_t>(d) + 1, 1);
      for (int i = 0; i < d; ++i) h[static_cast<std::size_t>(i)] = coeff(rng);
      if (unit_on_D(h)) return h;
    }
  };
  const bool inf_in_D = X.in_D(ClosedPoint::at_infinity());
  for (int s = 0; s < samples; ++s) {
    const int dn = static_cast<int>(deg(rng));
    const int dd = inf_in_D ? dn : static_cast<int>(deg(rng));
    i64 c = 0;
    while (c == 0) c = coeff(rng);
    RationalFunction f(poly::scale(random_monic(dn), c, p), random_monic(dd), p);
    if (!test(f)) return out;
  }
  return out;
}

// JSON forms. Points are "inf", {"rep": a} for rational points, or {"minpoly": [c0, c1, ...]}.

inline io::json point_to_json(const ClosedPoint& x, i64 p) {
  if (x.infinity) return "inf";
  io::json j = {{"minpoly", x.minpoly}};
  if (x.degree() == 1) j["rep"] = x.root(p);
  return j;
}

inline ClosedPoint point_from_json(const io::json& j, i64 p, const std::string& where) {
  if (j.is_string()) {
    if (j.get<std::string>() == "inf") return ClosedPoint::at_infinity();
    io::parse_fail(where, "expected \"inf\"");
  }
  io::Fields f(j, where);
  const io::json* mp = f.optional("minpoly");
  const io::json* rep = f.optional("rep");
  f.finish();
  if (mp) {
    try {
      auto x = ClosedPoint::from_minpoly(io::as_int_array(*mp, where + "/minpoly"), p);
      if (rep && (x.degree() != 1 || x.root(p) != poly::modp(io::as_int(*rep, where + "/rep"), p)))
        io::parse_fail(where + "/rep", "does not match minpoly");
      return x;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::parse_error) throw;
      io::parse_fail(where + "/minpoly", e.what());
    }
  }
  if (rep) return ClosedPoint::rational(io::as_int(*rep, where + "/rep"), p);
  io::parse_fail(where, "point needs minpoly or rep");
}

inline io::json to_json(const MarkedLine& X) {
  io::json D = io::json::array(), M = io::json::array();
  for (const auto& x : X.D) D.push_back(point_to_json(x, X.p));
  for (const auto& x : X.marked) M.push_back(point_to_json(x, X.p));
  return {{"p", X.p}, {"D", D}, {"marked", M}};
}

inline MarkedLine marked_line_from_json(const io::json& j, const std::string& where = "") {
  io::Fields f(j, where);
  MarkedLine X;
  X.p = io::as_int(f.required("p"), where + "/p");
  if (!exact::is_prime(X.p)) io::parse_fail(where + "/p", "not a prime");
  const auto& D = io::as_array(f.required("D"), where + "/D");
  for (std::size_t i = 0; i < D.size(); ++i) X.D.push_back(point_from_json(D[i], X.p, where + "/D/" + std::to_string(i)));
  if (const io::json* M = f.optional("marked")) {
    const auto& arr = io::as_array(*M, where + "/marked");
    for (std::size_t i = 0; i < arr.size(); ++i) X.marked.push_back(point_from_json(arr[i], X.p, where + "/marked/" + std::to_string(i)));
  }
  f.finish();
  return X;
}

inline io::json to_json(const ZeroCycleClass& c, i64 p) {
  io::json off = io::json::array(), at = io::json::array();
  for (const auto& [x, m] : c.offD) off.push_back({{"point", point_to_json(x, p)}, {"mult", m}});
  for (const auto& [x, a] : c.atD) at.push_back({{"point", point_to_json(x, p)}, {"unit", a.coords()}});
  return {{"offD", off}, {"atD", at}};
}

inline ZeroCycleClass zero_cycle_from_json(const io::json& j, i64 p, const std::string& where = "") {
  io::Fields f(j, where);
  ZeroCycleClass c;
  const auto& off = io::as_array(f.required("offD"), where + "/offD");
  for (std::size_t i = 0; i < off.size(); ++i) {
    const std::string w = where + "/offD/" + std::to_string(i);
    io::Fields e(off[i], w);
    c.offD[point_from_json(e.required("point"), p, w + "/point")] += static_cast<int>(io::as_int(e.required("mult"), w + "/mult"));
    e.finish();
  }
  const auto& at = io::as_array(f.required("atD"), where + "/atD");
  for (std::size_t i = 0; i < at.size(); ++i) {
    const std::string w = where + "/atD/" + std::to_string(i);
    io::Fields e(at[i], w);
    const auto x = point_from_json(e.required("point"), p, w + "/point");
    const auto a = residue_field(x, p)->from_coords(io::as_int_array(e.required("unit"), w + "/unit"));
    if (a.is_zero()) io::parse_fail(w + "/unit", "must be a unit");
    c.atD.emplace(x, a);
    e.finish();
  }
  f.finish();
  return c;
}

inline io::json to_json(const ChiData& chi) {
  io::json local = io::json::array();
  for (const auto& [x, c] : chi.local)
    local.push_back({{"point", point_to_json(x, chi.p)}, {"order", c.order()}, {"exp", c.exponent()}});
  return {{"p", chi.p}, {"w", {{"order", chi.w_order}, {"exp", chi.w_exp}}}, {"local", local}};
}

inline ChiData chi_data_from_json(const io::json& j, const std::string& where = "") {
  io::Fields f(j, where);
  ChiData chi;
  chi.p = io::as_int(f.required("p"), where + "/p");
  if (!exact::is_prime(chi.p)) io::parse_fail(where + "/p", "not a prime");
  {
    io::Fields w(f.required("w"), where + "/w");
    chi.w_order = io::as_int(w.required("order"), where + "/w/order");
    chi.w_exp = io::as_int(w.required("exp"), where + "/w/exp");
    if (chi.w_order < 1) io::parse_fail(where + "/w/order", "must be positive");
    w.finish();
  }
  const auto& local = io::as_array(f.required("local"), where + "/local");
  for (std::size_t i = 0; i < local.size(); ++i) {
    const std::string w = where + "/local/" + std::to_string(i);
    io::Fields e(local[i], w);
    const auto x = point_from_json(e.required("point"), chi.p, w + "/point");
    const i64 n = io::as_int(e.required("order"), w + "/order"), k = io::as_int(e.required("exp"), w + "/exp");
    try {
      chi.local.emplace(x, MultCharacter(residue_field(x, chi.p), n, k));
    } catch (const Error& err) {
      io::parse_fail(w, err.what());
    }
    e.finish();
  }
  f.finish();
  return chi;
}

}  // namespace rootsign::p1
