#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/group/abelian.hpp"
#include "rootsign/json_io.hpp"

namespace rootsign::group {

struct RepValidation {
  bool orthogonal = true;
  bool dimension_zero = true;
  bool trivial_det = true;
  bool ok() const { return orthogonal && dimension_zero && trivial_det; }

  std::string describe() const {
    if (ok()) return "valid";
    std::string s;
    auto add = [&](const char* m) { s += (s.empty() ? "" : ", ") + std::string(m); };
    if (!orthogonal) add("not orthogonal");
    if (!dimension_zero) add("dimension not zero");
    if (!trivial_det) add("determinant not trivial");
    return s;
  }
};

/// Integer combination of characters of a finite abelian group.
class VirtualRep {
 public:
  VirtualRep() = default;
  explicit VirtualRep(AbelianGroup g) : group_(std::move(g)) {}

  const AbelianGroup& group() const { return group_; }
  const std::map<GCharacter, i64>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  VirtualRep& add(const GCharacter& chi, i64 mult) {
    const GCharacter c = character(group_, chi.exps);
    i64& m = terms_[c];
    m = exact::detail::checked_add(m, mult);
    if (m == 0) terms_.erase(c);
    return *this;
  }

  VirtualRep& add(std::vector<i64> exps, i64 mult) { return add(GCharacter{std::move(exps)}, mult); }

  i64 multiplicity(const GCharacter& chi) const {
    auto it = terms_.find(chi);
    return it == terms_.end() ? 0 : it->second;
  }

  i64 dimension() const {
    i64 d = 0;
    for (const auto& [chi, m] : terms_) d = exact::detail::checked_add(d, m);
    return d;
  }

  GCharacter det() const {
    GCharacter d{std::vector<i64>(group_.rank(), 0)};
    for (const auto& [chi, m] : terms_) d = multiply(group_, d, chi, m);
    return d;
  }

  bool is_orthogonal() const {
    for (const auto& [chi, m] : terms_) {
      if (multiplicity(conj(group_, chi)) != m) return false;
    }
    return true;
  }

  RepValidation validate() const { return {is_orthogonal(), dimension() == 0, det().is_trivial()}; }

  friend VirtualRep operator+(const VirtualRep& a, const VirtualRep& b) {
    if (!(a.group_ == b.group_)) fail(ErrorKind::group_mismatch, "sum of representations of different groups");
    VirtualRep r = a;
    for (const auto& [chi, m] : b.terms_) r.add(chi, m);
    return r;
  }

  friend VirtualRep operator*(i64 k, const VirtualRep& a) {
    VirtualRep r(a.group_);
    if (k == 0) return r;
    for (const auto& [chi, m] : a.terms_) r.terms_[chi] = exact::detail::checked_mul(k, m);
    return r;
  }

  friend bool operator==(const VirtualRep&, const VirtualRep&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [chi, m] : terms_) {
      if (!s.empty()) s += m < 0 ? " - " : " + ";
      else if (m < 0) s += "-";
      const i64 a = m < 0 ? -m : m;
      if (a != 1) s += std::to_string(a) + "*";
      s += chi.to_string();
    }
    return s;
  }

 private:
  AbelianGroup group_;
  std::map<GCharacter, i64> terms_;
};

inline RepValidation validate_rep(const VirtualRep& v) { return v.validate(); }

/// V^I: the terms whose character is trivial on I.
inline VirtualRep invariants_under(const VirtualRep& v, const Subgroup& inertia) {
  if (!(inertia.group() == v.group())) fail(ErrorKind::group_mismatch, "subgroup belongs to " + inertia.group().to_string());
  VirtualRep r(v.group());
  for (const auto& [chi, m] : v.terms()) {
    if (chi.trivial_on(v.group(), inertia)) r.add(chi, m);
  }
  return r;
}

struct DetTrivialityResult {
  bool trivial = true;
  std::optional<Subgroup> witness;  // smallest failing subgroup
  std::vector<Subgroup> failing;
  std::size_t subgroups_checked = 0;
};

inline DetTrivialityResult det_trivial_all_subgroups(const VirtualRep& v, i64 bound = 10000) {
  DetTrivialityResult out;
  for (const auto& h : all_subgroups(v.group(), bound)) {
    ++out.subgroups_checked;
    if (!invariants_under(v, h).det().is_trivial()) {
      if (out.trivial) out.witness = h;
      out.trivial = false;
      out.failing.push_back(h);
    }
  }
  return out;
}

/// det(-F | V^I) = (-1)^dim(V^I) det(V^I)(F).
inline exact::CycloValue det_eval_minus_frobenius(const VirtualRep& v, const Subgroup& inertia, const GroupElement& frob) {
  if (!v.group().contains(frob)) fail(ErrorKind::group_mismatch, "Frobenius " + frob.to_string() + " is not in " + v.group().to_string());
  const VirtualRep w = invariants_under(v, inertia);
  const i64 n = v.group().exponent();
  const int m = static_cast<int>(n % 2 == 0 ? n : 2 * n);
  const i64 e = w.det().value_exponent(v.group(), frob) * (m / n) + ((w.dimension() % 2 != 0) ? m / 2 : 0);
  return exact::CycloValue::root(m, e);
}

// JSON: {"group": [n1,...], "terms": [{"exps": [...], "mult": m}, ...]}

inline io::json to_json(const VirtualRep& v) {
  io::json terms = io::json::array();
  for (const auto& [chi, m] : v.terms()) terms.push_back({{"exps", chi.exps}, {"mult", m}});
  return {{"group", v.group().factors()}, {"terms", terms}};
}

inline VirtualRep rep_from_json(const io::json& j, const std::string& where = "") {
  io::Fields f(j, where);
  const auto factors = io::as_int_array(f.required("group"), f.at("group"));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i] < 1) io::parse_fail(f.at("group") + "/" + std::to_string(i), "group factors must be positive");
  }
  VirtualRep v{AbelianGroup(factors)};
  const auto& terms = io::as_array(f.required("terms"), f.at("terms"));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string at = f.at("terms") + "/" + std::to_string(i);
    io::Fields t(terms[i], at);
    auto exps = io::as_int_array(t.required("exps"), t.at("exps"));
    if (exps.size() != factors.size()) io::parse_fail(t.at("exps"), "expected " + std::to_string(factors.size()) + " exponents");
    const i64 mult = io::as_int(t.required("mult"), t.at("mult"));
    t.finish();
    v.add(std::move(exps), mult);
  }
  f.finish();
  return v;
}

}  // namespace rootsign::group
