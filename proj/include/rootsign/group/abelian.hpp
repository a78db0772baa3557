#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/error.hpp"
#include "rootsign/exact/cyclo.hpp"

namespace rootsign::group {

using i64 = std::int64_t;

struct GroupElement {
  std::vector<i64> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) s += (i ? "," : "") + std::to_string(coords[i]);
    return s + ")";
  }
};

/// G = Z/n_1 x ... x Z/n_r.
class AbelianGroup {
 public:
  AbelianGroup() = default;
  explicit AbelianGroup(std::vector<i64> factors) : factors_(std::move(factors)) {
    for (i64 n : factors_) {
      if (n < 1) fail(ErrorKind::group_mismatch, "group factors must be positive");
    }
  }

  const std::vector<i64>& factors() const { return factors_; }
  std::size_t rank() const { return factors_.size(); }

  i64 order() const {
    i64 o = 1;
    for (i64 n : factors_) o = exact::detail::checked_mul(o, n);
    return o;
  }

  /// lcm of the factors; every character takes values in mu_exponent.
  i64 exponent() const {
    i64 e = 1;
    for (i64 n : factors_) e = std::lcm(e, n);
    return e;
  }

  GroupElement identity() const { return {std::vector<i64>(factors_.size(), 0)}; }

  GroupElement element(std::vector<i64> coords) const {
    if (coords.size() != factors_.size()) fail(ErrorKind::group_mismatch, "element has wrong rank");
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = exact::detail::mod_floor(coords[i], factors_[i]);
    return {std::move(coords)};
  }

  bool contains(const GroupElement& g) const {
    if (g.coords.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < g.coords.size(); ++i) {
      if (g.coords[i] < 0 || g.coords[i] >= factors_[i]) return false;
    }
    return true;
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) r.coords[i] = (a.coords[i] + b.coords[i]) % factors_[i];
    return r;
  }

  GroupElement neg(const GroupElement& a) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i) r.coords[i] = (factors_[i] - a.coords[i]) % factors_[i];
    return r;
  }

  GroupElement scale(const GroupElement& a, i64 k) const {
    GroupElement r = a;
    for (std::size_t i = 0; i < factors_.size(); ++i)
      r.coords[i] = exact::detail::mod_floor(exact::detail::checked_mul(a.coords[i] % factors_[i], k % factors_[i]), factors_[i]);
    return r;
  }

  i64 element_order(const GroupElement& a) const {
    i64 o = 1;
    for (std::size_t i = 0; i < factors_.size(); ++i) o = std::lcm(o, factors_[i] / std::gcd(factors_[i], a.coords[i]));
    return o;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    GroupElement g = identity();
    const i64 n = order();
    out.reserve(static_cast<std::size_t>(n));
    for (i64 idx = 0; idx < n; ++idx) {
      out.push_back(g);
      for (std::size_t i = factors_.size(); i-- > 0;) {
        if (++g.coords[i] < factors_[i]) break;
        g.coords[i] = 0;
      }
    }
    return out;
  }

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;

  std::string to_string() const {
    if (factors_.empty()) return "trivial group";
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + std::string("Z/") + std::to_string(factors_[i]);
    return s;
  }

 private:
  std::vector<i64> factors_;
};

/// A subgroup stored with its generators and its sorted element list.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup generated_by(const AbelianGroup& g, const std::vector<GroupElement>& gens) {
    Subgroup h;
    h.group_ = g;
    std::set<GroupElement> elems{g.identity()};
    for (const auto& x : gens) {
      if (!g.contains(x)) fail(ErrorKind::group_mismatch, "generator " + x.to_string() + " is not in " + g.to_string());
      if (elems.count(x)) continue;
      h.gens_.push_back(x);
      // H + <x>
      std::set<GroupElement> grown;
      GroupElement m = g.identity();
      do {
        for (const auto& e : elems) grown.insert(g.add(e, m));
        m = g.add(m, x);
      } while (!elems.count(m));
      elems = std::move(grown);
    }
    h.elems_.assign(elems.begin(), elems.end());
    return h;
  }

  static Subgroup trivial(const AbelianGroup& g) { return generated_by(g, {}); }
  static Subgroup whole(const AbelianGroup& g) {
    std::vector<GroupElement> gens;
    for (std::size_t i = 0; i < g.rank(); ++i) {
      GroupElement e = g.identity();
      e.coords[i] = g.factors()[i] > 1 ? 1 : 0;
      gens.push_back(e);
    }
    return generated_by(g, gens);
  }

  const AbelianGroup& group() const { return group_; }
  const std::vector<GroupElement>& generators() const { return gens_; }
  const std::vector<GroupElement>& elements() const { return elems_; }
  i64 order() const { return static_cast<i64>(elems_.size()); }

  bool contains(const GroupElement& x) const { return std::binary_search(elems_.begin(), elems_.end(), x); }

  bool is_subgroup_of(const Subgroup& other) const {
    if (!(group_ == other.group_)) return false;
    return std::all_of(elems_.begin(), elems_.end(), [&](const auto& x) { return other.contains(x); });
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.group_ == b.group_ && a.elems_ == b.elems_; }

  std::string to_string() const {
    if (gens_.empty()) return "<0>";
    std::string s = "<";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? "," : "") + gens_[i].to_string();
    return s + ">";
  }

 private:
  AbelianGroup group_;
  std::vector<GroupElement> gens_;
  std::vector<GroupElement> elems_;
};

/// Every subgroup of G, by breadth-first closure H -> H + <g> from the trivial subgroup.
inline std::vector<Subgroup> all_subgroups(const AbelianGroup& g, i64 bound = 10000) {
  if (g.order() > bound)
    fail(ErrorKind::group_too_large, "|G| = " + std::to_string(g.order()) + " exceeds enumeration bound " + std::to_string(bound));
  const auto all = g.elements();
  std::vector<Subgroup> out;
  std::set<std::vector<GroupElement>> seen;
  std::deque<Subgroup> queue{Subgroup::trivial(g)};
  seen.insert(queue.front().elements());
  while (!queue.empty()) {
    Subgroup h = std::move(queue.front());
    queue.pop_front();
    for (const auto& x : all) {
      if (h.contains(x)) continue;
      auto gens = h.generators();
      gens.push_back(x);
      Subgroup k = Subgroup::generated_by(g, gens);
      if (seen.insert(k.elements()).second) queue.push_back(std::move(k));
    }
    out.push_back(std::move(h));
  }
  std::stable_sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  return out;
}

/// chi(g) = prod zeta_{n_i}^(k_i g_i).
struct GCharacter {
  std::vector<i64> exps;

  friend bool operator==(const GCharacter&, const GCharacter&) = default;
  friend auto operator<=>(const GCharacter&, const GCharacter&) = default;

  bool is_trivial() const {
    return std::all_of(exps.begin(), exps.end(), [](i64 k) { return k == 0; });
  }

  /// Exponent e with chi(g) = zeta_N^e, N the group exponent.
  i64 value_exponent(const AbelianGroup& G, const GroupElement& g) const {
    const i64 n = G.exponent();
    i64 e = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) {
      const i64 ni = G.factors()[i];
      e = (e + (exps[i] * g.coords[i]) % ni * (n / ni)) % n;
    }
    return e;
  }

  exact::CycloValue operator()(const AbelianGroup& G, const GroupElement& g) const {
    return exact::CycloValue::root(static_cast<int>(G.exponent()), value_exponent(G, g));
  }

  bool trivial_on(const AbelianGroup& G, const Subgroup& h) const {
    for (const auto& x : h.generators()) {
      if (value_exponent(G, x) != 0) return false;
    }
    return true;
  }

  std::string to_string() const {
    std::string s = "chi(";
    for (std::size_t i = 0; i < exps.size(); ++i) s += (i ? "," : "") + std::to_string(exps[i]);
    return s + ")";
  }
};

inline GCharacter character(const AbelianGroup& G, std::vector<i64> exps) {
  if (exps.size() != G.rank()) fail(ErrorKind::group_mismatch, "character has wrong rank");
  for (std::size_t i = 0; i < exps.size(); ++i) exps[i] = exact::detail::mod_floor(exps[i], G.factors()[i]);
  return {std::move(exps)};
}

inline GCharacter conj(const AbelianGroup& G, const GCharacter& chi) {
  GCharacter r = chi;
  for (std::size_t i = 0; i < r.exps.size(); ++i) r.exps[i] = (G.factors()[i] - r.exps[i]) % G.factors()[i];
  return r;
}

inline GCharacter multiply(const AbelianGroup& G, const GCharacter& a, const GCharacter& b, i64 power = 1) {
  GCharacter r = a;
  for (std::size_t i = 0; i < r.exps.size(); ++i) {
    const i64 n = G.factors()[i];
    r.exps[i] = exact::detail::mod_floor(a.exps[i] + (b.exps[i] * (power % n)) % n, n);
  }
  return r;
}

}  // namespace rootsign::group
