#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "rootsign/exact/character.hpp"

using namespace rootsign;
using namespace rootsign::exact;


TEST(CanonicalGenerator, SmallPrimeFields) {
  EXPECT_EQ(canonical_generator(FiniteField::get(5)).code(), 2);
  EXPECT_EQ(canonical_generator(FiniteField::get(2)).code(), 1);
  EXPECT_EQ(canonical_generator(FiniteField::get(13)).code(), 2);
}

TEST(CanonicalGenerator, HasFullOrder) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 3}, {3, 2}, {5, 2}, {7, 2}, {2, 5}, {3, 3}}) {
    auto F = FiniteField::get(p, f);
    auto g = F->generator();
    auto x = F->one();
    for (std::int64_t i = 1; i < F->q() - 1; ++i) {
      x = x * g;
      EXPECT_FALSE(x.is_one()) << F->name() << " power " << i;
    }
    EXPECT_TRUE((x * g).is_one());
  }
}

TEST(FiniteField, DefaultModulusIsLeastIrreducible) {
  EXPECT_EQ(FiniteField::get(2, 2)->modulus(), (PolyFp{1, 1, 1}));
  EXPECT_EQ(FiniteField::get(3, 2)->modulus(), (PolyFp{1, 0, 1}));
  EXPECT_EQ(FiniteField::get(2, 3)->modulus(), (PolyFp{1, 0, 1, 1}));  // (1,0,1) precedes (1,1,0)
}

TEST(FiniteField, FrobeniusFixesEverything) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 4}, {3, 3}, {5, 2}, {7, 2}, {11, 1}}) {
    auto F = FiniteField::get(p, f);
    for (const auto& x : F->elements()) EXPECT_EQ(x.pow(F->q()), x);
  }
}

TEST(FiniteField, FieldAxiomsSampled) {
  auto F = FiniteField::get(3, 3);
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> d(0, F->q() - 1);
  for (int i = 0; i < 500; ++i) {
    auto a = F->element(d(rng)), b = F->element(d(rng)), c = F->element(d(rng));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) - b, a);
    if (!a.is_zero()) {
      EXPECT_TRUE((a * a.inv()).is_one());
    }
  }
}

TEST(FiniteField, TraceIsAdditiveAndLandsInPrimeField) {
  auto F = FiniteField::get(5, 2);
  for (const auto& a : F->elements()) {
    // Tr(a) = a + a^p computed in the field
    auto t = a + a.pow(5);
    EXPECT_EQ(t.code(), a.trace());
  }
}

TEST(FiniteField, RejectsBadInput) {
  EXPECT_THROW(FiniteField::get(6), Error);
  EXPECT_THROW(FiniteField::make(5, {1, 0, 1}), Error);  // t^2+1 = (t-2)(t+2)
  EXPECT_THROW(FiniteField::get(2, 40), Error);
}

TEST(CharEval, Examples) {
  auto F = FiniteField::get(13);
  auto quad = MultCharacter::quadratic(F);
  EXPECT_EQ(char_eval(quad, F->element(2)), CycloValue::integer(-1));
  for (std::int64_t k = 0; k < 12; ++k) {
    MultCharacter chi(F, 12, k);
    EXPECT_EQ(chi(F->one()), CycloValue::integer(1));
  }
  auto triv = MultCharacter::trivial(F);
  for (std::int64_t u = 1; u < 13; ++u) EXPECT_EQ(triv(F->element(u)), CycloValue::integer(1));
  EXPECT_THROW(quad(F->zero()), Error);
}

TEST(CharEval, QuadraticMatchesSquares) {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23}) {
    auto F = FiniteField::get(p);
    auto quad = MultCharacter::quadratic(F);
    std::vector<bool> square(static_cast<std::size_t>(p), false);
    for (int x = 1; x < p; ++x) square[static_cast<std::size_t>(x * x % p)] = true;
    for (int u = 1; u < p; ++u) EXPECT_EQ(quad(F->element(u)), CycloValue::integer(square[static_cast<std::size_t>(u)] ? 1 : -1));
  }
}

TEST(CharEval, MultiplicativeExhaustive) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {7, 2}, {5, 2}, {2, 3}, {13, 1}, {47, 1}}) {
    auto F = FiniteField::get(p, f);
    if (F->q() > 49) continue;
    for (std::int64_t n : prime_divisors(F->q() - 1)) {
      MultCharacter chi(F, F->q() - 1, n);
      for (std::int64_t a = 1; a < F->q(); ++a)
        for (std::int64_t b = 1; b < F->q(); ++b) {
          auto u = F->element(a), v = F->element(b);
          EXPECT_EQ(chi(u * v), chi(u) * chi(v));
        }
    }
  }
}

TEST(GaussSum, QuadraticF13) {
  auto g = gauss_sum(MultCharacter::quadratic(FiniteField::get(13)));
  EXPECT_TRUE(g.is_one());
  EXPECT_EQ(real_sign(g), 1);
  // algebraic part squares to 13
  EXPECT_EQ(g.algebraic() * g.algebraic(), CycloValue::integer(13));
}

TEST(GaussSum, QuadraticF3IsI) {
  auto g = gauss_sum(MultCharacter::quadratic(FiniteField::get(3)));
  EXPECT_EQ(g, NormalizedValue(CycloValue::root(4, 1)));
  EXPECT_EQ(g.describe(), "+i");
  try {
    real_sign(g);
    FAIL() << "expected NotReal";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_real);
  }
}

TEST(GaussSum, TrivialRejected) {
  try {
    gauss_sum(MultCharacter::trivial(FiniteField::get(7)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::trivial_character);
  }
}

TEST(GaussSum, CubicTimesConjugate) {
  auto F = FiniteField::get(13);
  MultCharacter chi(F, 3, 1);
  EXPECT_TRUE((gauss_sum(chi) * gauss_sum(chi.conj())).is_one());
}

TEST(GaussSum, MatchesFloatingBruteForce) {
  for (int p : {3, 5, 7, 11, 13, 17, 19, 23, 29}) {
    auto F = FiniteField::get(p);
    for (std::int64_t k = 1; k < p - 1; ++k) {
      MultCharacter chi(F, p - 1, k);
      auto exact = gauss_sum_algebraic(chi).numeric();
      auto ref = brute_gauss(p, p - 1, k);
      EXPECT_NEAR(double(exact.real()), ref.real(), 1e-7);
      EXPECT_NEAR(double(exact.imag()), ref.imag(), 1e-7);
    }
  }
}

TEST(GaussSum, NormalizedValuesAreUnitary) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{3, 2}, {2, 4}, {5, 2}, {7, 1}, {2, 3}}) {
    auto F = FiniteField::get(p, f);
    for (std::int64_t k = 1; k < F->q() - 1; ++k) {
      auto g = gauss_sum(MultCharacter(F, F->q() - 1, k));
      EXPECT_TRUE(g.is_unitary());
      EXPECT_NEAR(double(std::abs(g.numeric())), 1.0, 1e-9);
    }
  }
}

TEST(GaussSum, ProductWithConjugateIsChiMinusOne) {
  for (int p = 3; p <= 47; ++p) {
    if (!is_prime(p)) continue;
    auto F = FiniteField::get(p);
    auto minus_one = F->element(p - 1);
    for (std::int64_t k = 1; k < p - 1; ++k) {
      MultCharacter chi(F, p - 1, k);
      EXPECT_EQ(gauss_sum(chi) * gauss_sum(chi.conj()), NormalizedValue(chi(minus_one))) << p << " " << k;
    }
  }
}

TEST(GaussSumVirtual, Examples) {
  auto F = FiniteField::get(13);
  MultCharacter chi(F, 3, 1);
  auto triv = MultCharacter::trivial(F);
  EXPECT_TRUE(gauss_sum_virtual({{chi, 1}, {chi.conj(), 1}, {triv, -2}}).is_one());
  EXPECT_TRUE(gauss_sum_virtual({}).is_one());
  EXPECT_TRUE(gauss_sum_virtual({{MultCharacter::quadratic(F), 2}, {triv, -2}}).is_one());
}

TEST(GaussSumVirtual, NegativeMultiplicityInverts) {
  auto F = FiniteField::get(7);
  MultCharacter chi(F, 6, 1);
  EXPECT_TRUE(gauss_sum_virtual({{chi, 1}, {chi, -1}}).is_one());
}

TEST(RealSign, Examples) {
  EXPECT_EQ(real_sign(NormalizedValue::one()), 1);
  EXPECT_EQ(real_sign(CycloValue::integer(-3)), -1);
  try {
    real_sign(CycloValue::integer(0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::zero_value);
  }
}

TEST(CycloValue, CanonicalFormIsACongruence) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int m = 1; m <= 60; ++m) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<std::int64_t> a(static_cast<std::size_t>(m)), b(a.size()), c(a.size());
      for (auto* v : {&a, &b, &c})
        for (auto& x : *v) x = coef(rng);
      auto A = CycloValue::from_exponent_coeffs(m, a), B = CycloValue::from_exponent_coeffs(m, b),
           C = CycloValue::from_exponent_coeffs(m, c);
      EXPECT_EQ(A * B, B * A);
      EXPECT_EQ((A * B) * C, A * (B * C));
      EXPECT_EQ(A * (B + C), A * B + A * C);
      EXPECT_EQ((A * B).conj(), A.conj() * B.conj());
      // Phi_m(zeta) = 0 in any representation: adding a multiple of sum of p-th roots changes nothing
      auto z = A.numeric() * B.numeric(), w = (A * B).numeric();
      EXPECT_NEAR(double(std::abs(z - w)), 0.0, 1e-6);
    }
  }
}

TEST(CycloValue, RootsOfUnity) {
  EXPECT_EQ(CycloValue::root(6, 3), CycloValue::integer(-1));
  EXPECT_EQ(CycloValue::root(4, 1).pow(2), CycloValue::integer(-1));
  EXPECT_EQ(CycloValue::root(3, 1) + CycloValue::root(3, 2), CycloValue::integer(-1));
  EXPECT_TRUE(CycloValue::root(12, 5).is_root_of_unity());
  EXPECT_EQ(CycloValue::root(12, 5).pow(-1), CycloValue::root(12, 7));
  EXPECT_EQ(CycloValue::integer(5).to_string(), "5");
}

TEST(QuadraticLaw, ClassicalSignUpTo199) {
  for (int p = 3; p <= 199; ++p) {
    if (!is_prime(p)) continue;
    auto g = gauss_sum_algebraic(MultCharacter::quadratic(FiniteField::get(p)));
    EXPECT_EQ(g * g, CycloValue::integer(p % 4 == 1 ? p : -p));
    auto z = g.numeric();
    if (p % 4 == 1) EXPECT_GT(double(z.real()), 0.0);
    else EXPECT_GT(double(z.imag()), 0.0);
  }
}
