#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rootsign/ell/tate.hpp"
#include "rootsign/exact/finite_field.hpp"
#include "rootsign/group/virtual_rep.hpp"
#include "rootsign/json_io.hpp"

namespace rootsign::fiber {

using group::AbelianGroup;
using group::GroupElement;
using group::Subgroup;
using i64 = std::int64_t;

// nodal: the irreducible nodal cubic of an I1 fiber, a single component with no crossings
enum class ComponentKind { rational, elliptic, nodal };
enum class Provenance { pipeline, manual };

inline std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::rational: return "rational";
    case ComponentKind::elliptic: return "elliptic";
    case ComponentKind::nodal: return "nodal";
  }
  return "?";
}

inline std::string to_string(Provenance p) { return p == Provenance::pipeline ? "pipeline" : "manual"; }

/// Explicit character of k(z)^*: chi(g0) = zeta_order^exp on the canonical generator.
struct LocalChar {
  i64 order = 1, exp = 0;
  friend bool operator==(const LocalChar&, const LocalChar&) = default;
};

struct DeltaEntry {
  int crossing = 0;
  std::vector<i64> unit;  // a_x in k(x), coordinates in the power basis
  std::optional<LocalChar> chi;  // det(V^{I_i}) at x; derived from the tame generator when absent
  friend bool operator==(const DeltaEntry&, const DeltaEntry&) = default;
};

struct KappaEntry {
  LocalChar chi;  // over the constant field F_{p^f}
  i64 mult = 1;
  friend bool operator==(const KappaEntry&, const KappaEntry&) = default;
};

struct FiberComponent {
  int id = 0;
  ComponentKind kind = ComponentKind::rational;
  int f = 1;
  std::optional<Subgroup> inertia;
  int euler_c = 0;
  std::optional<std::vector<DeltaEntry>> delta_data;
  std::optional<std::vector<KappaEntry>> kappa_data;
  friend bool operator==(const FiberComponent&, const FiberComponent&) = default;
};

struct CrossingPoint {
  int id = 0;
  std::array<int, 2> between{0, 0};
  int deg = 1;
  std::optional<Subgroup> inertia;
  std::optional<GroupElement> frobenius;
  // image in I_z of the canonical generator of k(z)^* under the tame inertia map
  std::optional<GroupElement> tame_generator;
  friend bool operator==(const CrossingPoint&, const CrossingPoint&) = default;
};

struct FiberDescription {
  i64 p = 2;
  AbelianGroup group;
  std::vector<FiberComponent> components;
  std::vector<CrossingPoint> crossings;
  Provenance provenance = Provenance::manual;
  std::string label;  // Kodaira symbol when built from reduction data

  const FiberComponent& component(int id) const {
    for (const auto& c : components)
      if (c.id == id) return c;
    fail(ErrorKind::invalid_fiber, "no component with id " + std::to_string(id));
  }

  const CrossingPoint& crossing(int id) const {
    for (const auto& z : crossings)
      if (z.id == id) return z;
    fail(ErrorKind::invalid_fiber, "no crossing with id " + std::to_string(id));
  }

  std::vector<int> crossings_on(int component_id) const {
    std::vector<int> out;
    for (const auto& z : crossings)
      if (z.between[0] == component_id || z.between[1] == component_id) out.push_back(z.id);
    return out;
  }

  friend bool operator==(const FiberDescription&, const FiberDescription&) = default;
};

/// Euler characteristic of the component minus its crossings, in units of its constant field.
inline int expected_euler_c(const FiberDescription& fd, const FiberComponent& c) {
  int weighted = 0;
  for (int z : fd.crossings_on(c.id)) weighted += fd.crossing(z).deg / c.f;
  return (c.kind == ComponentKind::rational ? 2 : 0) - weighted;
}

inline std::optional<i64> checked_prime_power(i64 p, int e) {
  i64 q = 1;
  for (int i = 0; i < e; ++i) {
    if (q > (i64{1} << 40) / p) return std::nullopt;
    q *= p;
  }
  return q;
}

struct ValidationReport {
  std::vector<std::string> errors;
  std::vector<std::string> missing;  // fields a full evaluation would need

  bool valid() const { return errors.empty(); }
  bool data_complete() const { return missing.empty(); }

  std::string describe() const {
    std::string s = valid() ? "valid" : "invalid";
    for (const auto& e : errors) s += "; " + e;
    if (!missing.empty()) {
      s += "; missing for full evaluation:";
      for (const auto& m : missing) s += " " + m;
    }
    return s;
  }
};

inline ValidationReport validate_fiber(const FiberDescription& fd) {
  ValidationReport r;
  auto err = [&](std::string m) { r.errors.push_back(std::move(m)); };
  if (!exact::is_prime(fd.p)) err("p = " + std::to_string(fd.p) + " is not prime");

  auto check_sub = [&](const Subgroup& h, const std::string& where) {
    if (!(h.group() == fd.group)) {
      err(where + " belongs to " + h.group().to_string() + ", not " + fd.group.to_string());
      return false;
    }
    if (fd.p > 1 && h.order() % fd.p == 0) err(where + " has order divisible by p (wild inertia)");
    return true;
  };

  std::set<int> cids, zids;
  for (const auto& c : fd.components) {
    const std::string at = "component " + std::to_string(c.id);
    if (!cids.insert(c.id).second) err("duplicate component id " + std::to_string(c.id));
    if (c.f < 1) err(at + ": f must be positive");
    if (c.inertia) check_sub(*c.inertia, at + " inertia");
  }
  for (const auto& z : fd.crossings) {
    const std::string at = "crossing " + std::to_string(z.id);
    if (!zids.insert(z.id).second) err("duplicate crossing id " + std::to_string(z.id));
    if (z.between[0] == z.between[1]) err(at + " joins component " + std::to_string(z.between[0]) + " to itself");
    if (z.deg < 1) err(at + ": deg must be positive");
    for (int i : z.between) {
      if (!cids.count(i)) {
        err(at + " references unknown component " + std::to_string(i));
        continue;
      }
      const auto& c = fd.component(i);
      if (c.f >= 1 && z.deg % c.f != 0) err(at + ": deg " + std::to_string(z.deg) + " not divisible by f of component " + std::to_string(i));
      if (z.inertia && c.inertia && z.inertia->group() == c.inertia->group() && !c.inertia->is_subgroup_of(*z.inertia))
        err(at + ": inertia does not contain that of component " + std::to_string(i));
    }
    if (z.inertia) check_sub(*z.inertia, at + " inertia");
    if (z.frobenius && !fd.group.contains(*z.frobenius)) err(at + ": Frobenius " + z.frobenius->to_string() + " is not in " + fd.group.to_string());
    if (z.tame_generator) {
      const auto& s = *z.tame_generator;
      if (!fd.group.contains(s)) {
        err(at + ": tame generator " + s.to_string() + " is not in " + fd.group.to_string());
      } else {
        if (z.inertia && z.inertia->group() == fd.group && !(Subgroup::generated_by(fd.group, {s}) == *z.inertia))
          err(at + ": tame generator does not generate the inertia group");
        const auto q = checked_prime_power(fd.p, z.deg);
        if (q && (*q - 1) % fd.group.element_order(s) != 0)
          err(at + ": tame generator order does not divide p^deg - 1");
      }
    }
  }

  for (const auto& c : fd.components) {
    const std::string at = "component " + std::to_string(c.id);
    if (c.f >= 1) {
      const int want = expected_euler_c(fd, c);
      if (c.euler_c != want) err(at + ": euler_c = " + std::to_string(c.euler_c) + " but incidences give " + std::to_string(want));
    }
    if (c.kind == ComponentKind::nodal && !fd.crossings_on(c.id).empty()) err(at + ": a nodal component carries no crossings");
    const auto mine = fd.crossings_on(c.id);
    if (c.delta_data) {
      for (const auto& d : *c.delta_data) {
        if (std::find(mine.begin(), mine.end(), d.crossing) == mine.end()) {
          err(at + ": delta entry for crossing " + std::to_string(d.crossing) + " which is not on it");
          continue;
        }
        const auto& z = fd.crossing(d.crossing);
        if (std::all_of(d.unit.begin(), d.unit.end(), [&](i64 a) { return a % fd.p == 0; })) err(at + ": delta unit at crossing " + std::to_string(z.id) + " is zero");
        if (static_cast<int>(d.unit.size()) > z.deg) err(at + ": delta unit has more coordinates than deg");
        const auto q = checked_prime_power(fd.p, z.deg);
        if (d.chi && (d.chi->order < 1 || (q && (*q - 1) % d.chi->order != 0))) err(at + ": delta character order does not divide p^deg - 1");
      }
    }
    if (c.kappa_data) {
      const auto q = checked_prime_power(fd.p, std::max(c.f, 1));
      for (const auto& k : *c.kappa_data)
        if (k.chi.order < 1 || (q && (*q - 1) % k.chi.order != 0)) err(at + ": kappa character order does not divide p^f - 1");
    }
  }

  for (const auto& c : fd.components)
    if (!c.inertia) r.missing.push_back("components/" + std::to_string(c.id) + "/inertia");
  for (const auto& z : fd.crossings) {
    const std::string at = "crossings/" + std::to_string(z.id) + "/";
    if (!z.inertia) r.missing.push_back(at + "inertia");
    if (!z.frobenius) r.missing.push_back(at + "frobenius");
    if (!z.tame_generator) r.missing.push_back(at + "tame_generator");
  }
  return r;
}

/// Special fiber of the minimal regular model, read off the Kodaira symbol.
inline FiberDescription build_fiber(const ell::KodairaData& k, const AbelianGroup& G) {
  FiberDescription fd;
  fd.p = static_cast<i64>(k.p);
  fd.group = G;
  fd.provenance = Provenance::pipeline;
  fd.label = k.type.symbol();
  if (k.type.is_good()) {
    fd.components.push_back({0, ComponentKind::elliptic, 1, std::nullopt, 0, std::nullopt, std::nullopt});
  } else if (k.type.is_multiplicative() && k.type.n == 1) {
    fd.components.push_back({0, ComponentKind::nodal, 1, std::nullopt, 0, std::nullopt, std::nullopt});
  } else if (k.type.is_multiplicative()) {
    const int n = k.type.n;
    for (int i = 0; i < n; ++i) fd.components.push_back({i, ComponentKind::rational, 1, std::nullopt, 0, std::nullopt, std::nullopt});
    for (int i = 0; i < n; ++i) {
      CrossingPoint z;
      z.id = i;
      z.between = {i, (i + 1) % n};
      fd.crossings.push_back(z);
    }
  } else {
    fail(ErrorKind::unsupported_type, "fiber of type " + k.type.symbol() + " at p = " + ell::str(k.p) + " is additive");
  }
  return fd;
}

// JSON

inline io::json subgroup_to_json(const Subgroup& h) {
  io::json g = io::json::array();
  for (const auto& x : h.generators()) g.push_back(x.coords);
  return g;
}

inline GroupElement element_from_json(const AbelianGroup& G, const io::json& j, const std::string& where) {
  auto c = io::as_int_array(j, where);
  if (c.size() != G.rank()) io::parse_fail(where, "expected " + std::to_string(G.rank()) + " coordinates");
  return G.element(std::move(c));
}

inline Subgroup subgroup_from_json(const AbelianGroup& G, const io::json& j, const std::string& where) {
  const auto& arr = io::as_array(j, where);
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < arr.size(); ++i) gens.push_back(element_from_json(G, arr[i], where + "/" + std::to_string(i)));
  return Subgroup::generated_by(G, gens);
}

inline io::json local_char_to_json(const LocalChar& c) { return {{"order", c.order}, {"exp", c.exp}}; }

inline LocalChar local_char_from_json(const io::json& j, const std::string& where) {
  io::Fields f(j, where);
  LocalChar c{io::as_int(f.required("order"), f.at("order")), io::as_int(f.required("exp"), f.at("exp"))};
  f.finish();
  if (c.order < 1) io::parse_fail(where + "/order", "must be positive");
  return c;
}

inline io::json to_json(const FiberDescription& fd) {
  io::json comps = io::json::array(), zs = io::json::array();
  for (const auto& c : fd.components) {
    io::json j = {{"id", c.id}, {"kind", to_string(c.kind)}, {"f", c.f}, {"euler_c", c.euler_c}};
    if (c.inertia) j["inertia"] = subgroup_to_json(*c.inertia);
    if (c.delta_data) {
      io::json d = io::json::array();
      for (const auto& e : *c.delta_data) {
        io::json je = {{"crossing", e.crossing}, {"unit", e.unit}};
        if (e.chi) je["chi"] = local_char_to_json(*e.chi);
        d.push_back(je);
      }
      j["delta_data"] = d;
    }
    if (c.kappa_data) {
      io::json d = io::json::array();
      for (const auto& e : *c.kappa_data) d.push_back({{"order", e.chi.order}, {"exp", e.chi.exp}, {"mult", e.mult}});
      j["kappa_data"] = d;
    }
    comps.push_back(j);
  }
  for (const auto& z : fd.crossings) {
    io::json j = {{"id", z.id}, {"between", {z.between[0], z.between[1]}}, {"deg", z.deg}};
    if (z.inertia) j["inertia"] = subgroup_to_json(*z.inertia);
    if (z.frobenius) j["frobenius"] = z.frobenius->coords;
    if (z.tame_generator) j["tame_generator"] = z.tame_generator->coords;
    zs.push_back(j);
  }
  io::json out = {{"p", fd.p},
                  {"group", fd.group.factors()},
                  {"provenance", to_string(fd.provenance)},
                  {"components", comps},
                  {"crossings", zs}};
  if (!fd.label.empty()) out["label"] = fd.label;
  return out;
}

inline FiberDescription fiber_from_json(const io::json& j, const std::string& where = "") {
  io::Fields f(j, where);
  FiberDescription fd;
  fd.p = io::as_int(f.required("p"), f.at("p"));
  if (!exact::is_prime(fd.p)) io::parse_fail(f.at("p"), "not a prime");
  const auto factors = io::as_int_array(f.required("group"), f.at("group"));
  for (i64 n : factors)
    if (n < 1) io::parse_fail(f.at("group"), "group factors must be positive");
  fd.group = AbelianGroup(factors);
  if (const io::json* pv = f.optional("provenance")) {
    const auto s = io::as_string(*pv, f.at("provenance"));
    if (s == "pipeline") fd.provenance = Provenance::pipeline;
    else if (s == "manual") fd.provenance = Provenance::manual;
    else io::parse_fail(f.at("provenance"), "expected \"pipeline\" or \"manual\"");
  }
  if (const io::json* lb = f.optional("label")) fd.label = io::as_string(*lb, f.at("label"));

  auto sub = [&](const io::json& x, const std::string& at) {
    try {
      return subgroup_from_json(fd.group, x, at);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::parse_error) throw;
      io::parse_fail(at, e.what());
    }
  };
  auto small_int = [](const io::json& x, const std::string& at) {
    const i64 v = io::as_int(x, at);
    if (v < -(1 << 30) || v > (1 << 30)) io::parse_fail(at, "out of range");
    return static_cast<int>(v);
  };

  const auto& comps = io::as_array(f.required("components"), f.at("components"));
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const std::string at = f.at("components") + "/" + std::to_string(i);
    io::Fields c(comps[i], at);
    FiberComponent fc;
    fc.id = small_int(c.required("id"), c.at("id"));
    const auto kind = io::as_string(c.required("kind"), c.at("kind"));
    if (kind == "rational") fc.kind = ComponentKind::rational;
    else if (kind == "elliptic") fc.kind = ComponentKind::elliptic;
    else if (kind == "nodal") fc.kind = ComponentKind::nodal;
    else io::parse_fail(c.at("kind"), "unknown component kind \"" + kind + "\"");
    fc.f = small_int(c.required("f"), c.at("f"));
    fc.euler_c = small_int(c.required("euler_c"), c.at("euler_c"));
    if (const io::json* x = c.optional("inertia")) fc.inertia = sub(*x, c.at("inertia"));
    if (const io::json* x = c.optional("delta_data")) {
      const auto& arr = io::as_array(*x, c.at("delta_data"));
      fc.delta_data.emplace();
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string dat = c.at("delta_data") + "/" + std::to_string(k);
        io::Fields d(arr[k], dat);
        DeltaEntry e;
        e.crossing = small_int(d.required("crossing"), d.at("crossing"));
        e.unit = io::as_int_array(d.required("unit"), d.at("unit"));
        if (const io::json* ch = d.optional("chi")) e.chi = local_char_from_json(*ch, d.at("chi"));
        d.finish();
        fc.delta_data->push_back(std::move(e));
      }
    }
    if (const io::json* x = c.optional("kappa_data")) {
      const auto& arr = io::as_array(*x, c.at("kappa_data"));
      fc.kappa_data.emplace();
      for (std::size_t k = 0; k < arr.size(); ++k) {
        const std::string kat = c.at("kappa_data") + "/" + std::to_string(k);
        io::Fields d(arr[k], kat);
        KappaEntry e;
        e.chi.order = io::as_int(d.required("order"), d.at("order"));
        e.chi.exp = io::as_int(d.required("exp"), d.at("exp"));
        e.mult = io::as_int(d.required("mult"), d.at("mult"));
        if (e.chi.order < 1) io::parse_fail(d.at("order"), "must be positive");
        d.finish();
        fc.kappa_data->push_back(e);
      }
    }
    c.finish();
    fd.components.push_back(std::move(fc));
  }

  const auto& zs = io::as_array(f.required("crossings"), f.at("crossings"));
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const std::string at = f.at("crossings") + "/" + std::to_string(i);
    io::Fields c(zs[i], at);
    CrossingPoint z;
    z.id = small_int(c.required("id"), c.at("id"));
    const auto b = io::as_int_array(c.required("between"), c.at("between"));
    if (b.size() != 2) io::parse_fail(c.at("between"), "expected two component ids");
    z.between = {static_cast<int>(b[0]), static_cast<int>(b[1])};
    z.deg = small_int(c.required("deg"), c.at("deg"));
    if (const io::json* x = c.optional("inertia")) z.inertia = sub(*x, c.at("inertia"));
    if (const io::json* x = c.optional("frobenius")) z.frobenius = element_from_json(fd.group, *x, c.at("frobenius"));
    if (const io::json* x = c.optional("tame_generator")) z.tame_generator = element_from_json(fd.group, *x, c.at("tame_generator"));
    c.finish();
    fd.crossings.push_back(std::move(z));
  }
  f.finish();
  return fd;
}

}  // namespace rootsign::fiber
