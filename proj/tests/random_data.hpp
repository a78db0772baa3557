#pragma once

#include <random>
#include <vector>

#include "rootsign/eps/engine.hpp"

namespace testdata {

using namespace rootsign;
using group::AbelianGroup;
using group::GroupElement;
using group::Subgroup;
using group::VirtualRep;
using i64 = std::int64_t;

inline const std::vector<std::vector<i64>>& small_groups() {
  static const std::vector<std::vector<i64>> g = {{2},  {3},  {4},  {5},  {6},    {7},    {8},    {2, 2}, {9},    {10},
                                                  {11}, {12}, {13}, {14}, {15},   {16},   {2, 4}, {2, 6}, {2, 8}, {4, 4},
                                                  {3, 3}, {2, 2, 2}, {2, 2, 4}, {2, 2, 2, 2}};
  return g;
}

inline i64 pick(std::mt19937_64& rng, i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng); }

inline GroupElement random_element(const AbelianGroup& G, std::mt19937_64& rng) {
  std::vector<i64> c;
  for (i64 n : G.factors()) c.push_back(pick(rng, 0, n - 1));
  return G.element(c);
}

/// Orthogonal, dimension zero, trivial determinant.
inline VirtualRep random_valid_rep(const AbelianGroup& G, std::mt19937_64& rng, int terms = 3) {
  VirtualRep v(G);
  for (int t = 0; t < terms; ++t) {
    group::GCharacter chi{random_element(G, rng).coords};
    const i64 m = pick(rng, -2, 2);
    v.add(chi, m);
    if (group::conj(G, chi) != chi) v.add(group::conj(G, chi), m);
  }
  const auto d = v.det();
  if (!d.is_trivial()) v.add(d, 1);
  v.add(group::GCharacter{std::vector<i64>(G.rank(), 0)}, -v.dimension());
  return v;
}

inline bool is_prime(i64 n) { return exact::is_prime(n); }

/// A prime p not dividing |G| with n | p - 1.
inline i64 prime_with(i64 n, i64 order, std::mt19937_64& rng) {
  std::vector<i64> ps;
  for (i64 p = 3; ps.size() < 4; ++p)
    if (is_prime(p) && (p - 1) % n == 0 && order % p != 0) ps.push_back(p);
  return ps[static_cast<std::size_t>(pick(rng, 0, 3))];
}

/// Rational components in a cycle (closed) or a chain, with full crossing data.
/// Component inertia is shrunk below the common crossing inertia only where every
/// rep in `reps` keeps a trivial det(V^{I_i}) or stays unramified.
inline fiber::FiberDescription random_complete_fiber(const AbelianGroup& G, const std::vector<VirtualRep>& reps, std::mt19937_64& rng) {
  fiber::FiberDescription fd;
  fd.group = G;
  fd.provenance = fiber::Provenance::manual;
  const GroupElement sigma = random_element(G, rng);
  const i64 n = G.element_order(sigma);
  fd.p = prime_with(n, G.order(), rng);
  const Subgroup I = Subgroup::generated_by(G, {sigma});

  const int ncomp = static_cast<int>(pick(rng, 2, 5));
  const bool cycle = pick(rng, 0, 1) == 1;
  const int ncross = cycle ? ncomp : ncomp - 1;
  for (int i = 0; i < ncross; ++i) {
    fiber::CrossingPoint z;
    z.id = i;
    z.between = {i, (i + 1) % ncomp};
    z.inertia = I;
    z.frobenius = random_element(G, rng);
    z.tame_generator = sigma;
    fd.crossings.push_back(z);
  }
  for (int i = 0; i < ncomp; ++i) {
    fiber::FiberComponent c;
    c.id = i;
    std::vector<i64> divisors;
    for (i64 d = 1; d <= n; ++d)
      if (n % d == 0) divisors.push_back(d);
    c.inertia = Subgroup::generated_by(G, {G.scale(sigma, divisors[static_cast<std::size_t>(pick(rng, 0, static_cast<i64>(divisors.size()) - 1))])});
    for (const auto& v : reps) {
      const auto w = group::invariants_under(v, *c.inertia);
      bool ramified = false;
      for (const auto& [chi, m] : w.terms()) ramified = ramified || !chi.trivial_on(G, I);
      if (ramified && !w.det().is_trivial()) c.inertia = I;
    }
    c.delta_data.emplace();
    fd.components.push_back(c);
  }
  for (auto& c : fd.components) {
    for (int zid : fd.crossings_on(c.id)) c.delta_data->push_back({zid, {pick(rng, 1, fd.p - 1)}, std::nullopt});
    c.euler_c = fiber::expected_euler_c(fd, c);
  }
  return fd;
}

/// One component, no crossings, arbitrary declared data.
inline fiber::FiberDescription random_irreducible_fiber(const AbelianGroup& G, std::mt19937_64& rng) {
  fiber::FiberDescription fd;
  fd.group = G;
  fd.provenance = fiber::Provenance::manual;
  static const i64 primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
  do fd.p = primes[pick(rng, 0, 10)];
  while (G.order() % fd.p == 0);
  fiber::FiberComponent c;
  c.kind = static_cast<fiber::ComponentKind>(pick(rng, 0, 2));
  c.f = static_cast<int>(pick(rng, 1, 3));
  if (pick(rng, 0, 3) > 0) c.inertia = Subgroup::generated_by(G, {random_element(G, rng)});
  if (c.inertia && c.inertia->order() % fd.p == 0) c.inertia = Subgroup::trivial(G);
  fd.components.push_back(c);
  fd.components[0].euler_c = fiber::expected_euler_c(fd, fd.components[0]);
  return fd;
}

}  // namespace testdata
