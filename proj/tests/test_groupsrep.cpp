#include <gtest/gtest.h>

#include <complex>
#include <algorithm>
#include <random>

#include "rootsign/group/virtual_rep.hpp"

using namespace rootsign;
using namespace rootsign::group;
using exact::CycloValue;

namespace {

VirtualRep z3_example() {
  VirtualRep v(AbelianGroup({3}));
  v.add({1}, 1).add({2}, 1).add({0}, -2);
  return v;
}

VirtualRep klein_example() {
  VirtualRep v(AbelianGroup({2, 2}));
  v.add({1, 0}, 1).add({0, 1}, 1).add({1, 1}, -1).add({0, 0}, -1);
  return v;
}

// every orthogonal dimension-zero rep over G with small multiplicities, drawn at random
VirtualRep random_valid_rep(const AbelianGroup& G, std::mt19937& rng) {
  std::uniform_int_distribution<int> mult(-2, 2);
  VirtualRep v(G);
  for (const auto& g : G.elements()) {
    GCharacter chi{g.coords};
    GCharacter bar = conj(G, chi);
    if (bar < chi) continue;
    const int m = mult(rng);
    v.add(chi, m);
    if (!(bar == chi)) v.add(bar, m);
  }
  v.add(GCharacter{G.identity().coords}, -v.dimension());
  return v;
}

std::complex<double> numeric_char(const AbelianGroup& G, const GCharacter& chi, const GroupElement& g) {
  double phase = 0;
  for (std::size_t i = 0; i < G.rank(); ++i) phase += double(chi.exps[i] * g.coords[i]) / double(G.factors()[i]);
  return std::polar(1.0, 2 * M_PI * phase);
}

}  // namespace

TEST(ValidateRep, Examples) {
  EXPECT_TRUE(validate_rep(z3_example()).ok());
  VirtualRep bad(AbelianGroup({3}));
  bad.add({1}, 1).add({0}, -1);
  auto r = validate_rep(bad);
  EXPECT_FALSE(r.ok());
  EXPECT_FALSE(r.orthogonal);
  EXPECT_FALSE(r.trivial_det);
  EXPECT_TRUE(r.dimension_zero);
  EXPECT_TRUE(validate_rep(VirtualRep(AbelianGroup({3}))).ok());
}

TEST(InvariantsUnder, Examples) {
  auto v = z3_example();
  const auto& G = v.group();
  auto w = invariants_under(v, Subgroup::whole(G));
  VirtualRep expect(G);
  expect.add({0}, -2);
  EXPECT_EQ(w, expect);
  EXPECT_EQ(invariants_under(v, Subgroup::trivial(G)), v);

  auto k = klein_example();
  auto I = Subgroup::generated_by(k.group(), {k.group().element({1, 1})});
  VirtualRep kexp(k.group());
  kexp.add({1, 1}, -1).add({0, 0}, -1);
  EXPECT_EQ(invariants_under(k, I), kexp);
}

TEST(InvariantsUnder, GroupMismatch) {
  auto v = z3_example();
  try {
    invariants_under(v, Subgroup::trivial(AbelianGroup({5})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::group_mismatch);
  }
}

TEST(DetTrivialAllSubgroups, Examples) {
  auto r = det_trivial_all_subgroups(z3_example());
  EXPECT_TRUE(r.trivial);
  EXPECT_EQ(r.subgroups_checked, 2u);

  auto k = klein_example();
  auto rk = det_trivial_all_subgroups(k);
  EXPECT_FALSE(rk.trivial);
  ASSERT_TRUE(rk.witness.has_value());
  // all three order-2 subgroups fail here; <(1,1)> must be among them
  const auto diag = Subgroup::generated_by(k.group(), {k.group().element({1, 1})});
  EXPECT_NE(std::find(rk.failing.begin(), rk.failing.end(), diag), rk.failing.end());
  EXPECT_EQ(rk.failing.size(), 3u);
  EXPECT_EQ(rk.witness->order(), 2);

  EXPECT_TRUE(det_trivial_all_subgroups(VirtualRep(AbelianGroup({4, 2}))).trivial);
}

TEST(DetTrivialAllSubgroups, Bound) {
  try {
    det_trivial_all_subgroups(VirtualRep(AbelianGroup({200, 100})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::group_too_large);
  }
}

TEST(DetEvalMinusFrobenius, Examples) {
  auto v = z3_example();
  for (const auto& I : all_subgroups(v.group()))
    for (const auto& F : v.group().elements()) EXPECT_EQ(det_eval_minus_frobenius(v, I, F), CycloValue::integer(1));

  auto k = klein_example();
  auto I = Subgroup::generated_by(k.group(), {k.group().element({1, 1})});
  EXPECT_EQ(det_eval_minus_frobenius(k, I, k.group().element({1, 0})), CycloValue::integer(-1));
  VirtualRep zero(AbelianGroup({3}));
  EXPECT_EQ(det_eval_minus_frobenius(zero, Subgroup::trivial(zero.group()), zero.group().element({1})), CycloValue::integer(1));
}

TEST(Subgroups, Counts) {
  EXPECT_EQ(all_subgroups(AbelianGroup({5})).size(), 2u);
  EXPECT_EQ(all_subgroups(AbelianGroup({2, 2})).size(), 5u);
  EXPECT_EQ(all_subgroups(AbelianGroup({12})).size(), 6u);   // divisors of 12
  EXPECT_EQ(all_subgroups(AbelianGroup({2, 4})).size(), 8u);
  EXPECT_EQ(all_subgroups(AbelianGroup({3, 3})).size(), 6u);  // 1 + 4 + 1
  EXPECT_EQ(all_subgroups(AbelianGroup({2, 2, 2})).size(), 16u);
}

TEST(Subgroups, ClosedUnderAddition) {
  AbelianGroup G({2, 6});
  for (const auto& H : all_subgroups(G)) {
    for (const auto& a : H.elements())
      for (const auto& b : H.elements()) EXPECT_TRUE(H.contains(G.add(a, b)));
    EXPECT_EQ(G.order() % H.order(), 0);
  }
}

TEST(GCharacter, MatchesNumericEvaluation) {
  AbelianGroup G({4, 6});
  for (const auto& c : G.elements()) {
    GCharacter chi{c.coords};
    for (const auto& g : G.elements()) {
      auto z = chi(G, g).numeric();
      auto ref = numeric_char(G, chi, g);
      EXPECT_NEAR(double(z.real()), ref.real(), 1e-9);
      EXPECT_NEAR(double(z.imag()), ref.imag(), 1e-9);
    }
  }
}

TEST(InvariantsUnder, IdempotentMonotoneAndOrthogonal) {
  std::mt19937 rng(3);
  for (auto factors : std::vector<std::vector<i64>>{{6}, {2, 2}, {2, 4}, {3, 3}, {6, 6}, {12}, {2, 6}}) {
    AbelianGroup G(factors);
    auto subs = all_subgroups(G);
    for (int trial = 0; trial < 3; ++trial) {
      auto v = random_valid_rep(G, rng);
      for (const auto& I : subs) {
        auto vi = invariants_under(v, I);
        EXPECT_EQ(invariants_under(vi, I), vi);
        EXPECT_TRUE(vi.is_orthogonal());
        for (const auto& J : subs) {
          if (!I.is_subgroup_of(J)) continue;
          auto vj = invariants_under(v, J);
          for (const auto& [chi, m] : vj.terms()) EXPECT_EQ(vi.multiplicity(chi), m);
        }
      }
    }
  }
}

TEST(DetEvalMinusFrobenius, DependsOnlyOnCoset) {
  std::mt19937 rng(5);
  for (auto factors : std::vector<std::vector<i64>>{{6}, {2, 2}, {2, 4}, {3, 3}, {6, 6}, {2, 6}}) {
    AbelianGroup G(factors);
    auto subs = all_subgroups(G);
    auto v = random_valid_rep(G, rng);
    for (const auto& I : subs)
      for (const auto& F : G.elements()) {
        const auto base = det_eval_minus_frobenius(v, I, F);
        for (const auto& h : I.elements()) EXPECT_EQ(det_eval_minus_frobenius(v, I, G.add(F, h)), base);
      }
  }
}

TEST(DetEvalMinusFrobenius, MatchesNumericProduct) {
  std::mt19937 rng(9);
  AbelianGroup G({2, 4});
  for (int trial = 0; trial < 5; ++trial) {
    auto v = random_valid_rep(G, rng);
    for (const auto& I : all_subgroups(G))
      for (const auto& F : G.elements()) {
        std::complex<double> ref = 1;
        for (const auto& [chi, m] : v.terms()) {
          if (!chi.trivial_on(G, I)) continue;
          ref *= std::pow(-numeric_char(G, chi, F), double(m));
        }
        auto z = det_eval_minus_frobenius(v, I, F).numeric();
        EXPECT_NEAR(double(z.real()), ref.real(), 1e-9);
        EXPECT_NEAR(double(z.imag()), ref.imag(), 1e-9);
      }
  }
}

TEST(RepJson, RoundTripAndStrictness) {
  auto v = klein_example();
  EXPECT_EQ(rep_from_json(to_json(v)), v);
  auto j = io::parse_text(R"({"group":[3],"terms":[{"exps":[1],"mult":1},{"exps":[2],"mult":1},{"exps":[0],"mult":-2}]})");
  EXPECT_EQ(rep_from_json(j), z3_example());
  for (const char* bad : {R"({"group":[3]})", R"({"group":[3],"terms":[],"extra":1})", R"({"group":[3],"terms":[{"exps":[1,0],"mult":1}]})",
                          R"({"group":[0],"terms":[]})"}) {
    try {
      rep_from_json(io::parse_text(bad));
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse_error) << bad;
    }
  }
}
