#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rootsign/error.hpp"
#include "rootsign/exact/cyclo.hpp"
#include "rootsign/exact/finite_field.hpp"

namespace rootsign::exact {

/// Multiplicative character of F_q^*: chi(g0) = zeta_n^k on the canonical generator.
class MultCharacter {
 public:
  using i64 = std::int64_t;

  MultCharacter() = default;
  MultCharacter(FieldPtr field, i64 order, i64 k) : field_(std::move(field)), n_(order), k_(0) {
    if (n_ < 1 || (field_->q() - 1) % n_ != 0)
      fail(ErrorKind::invalid_field, "character order " + std::to_string(n_) + " does not divide q-1");
    k_ = poly::modp(k, n_);
    reduce();
  }

  static MultCharacter trivial(FieldPtr field) { return {std::move(field), 1, 0}; }

  /// The character of exact order two (odd q only).
  static MultCharacter quadratic(FieldPtr field) {
    if (field->q() % 2 == 0) fail(ErrorKind::invalid_field, "no quadratic character in characteristic 2");
    return {std::move(field), 2, 1};
  }

  const FieldPtr& field() const { return field_; }
  i64 order() const { return n_; }
  i64 exponent() const { return k_; }
  bool is_trivial() const { return k_ == 0; }

  MultCharacter conj() const { return {field_, n_, n_ - k_}; }

  friend MultCharacter operator*(const MultCharacter& a, const MultCharacter& b) {
    const i64 n = std::lcm(a.n_, b.n_);
    return {a.field_, n, a.k_ * (n / a.n_) + b.k_ * (n / b.n_)};
  }

  MultCharacter pow(i64 e) const { return {field_, n_, poly::modp(k_ * poly::modp(e, n_), n_)}; }

  /// log-exponent over q-1: chi(u) = zeta_{q-1}^{e * log u}.
  i64 full_exponent() const { return k_ * ((field_->q() - 1) / n_); }

  friend bool operator==(const MultCharacter& a, const MultCharacter& b) {
    return *a.field_ == *b.field_ && a.n_ == b.n_ && a.k_ == b.k_;
  }

  CycloValue operator()(const FieldElement& u) const {
    if (u.is_zero()) fail(ErrorKind::zero_argument, "character evaluated at zero");
    return CycloValue::root(static_cast<int>(n_), poly::modp(k_ * (u.log() % n_), n_));
  }

  std::string to_string() const { return "chi[" + field_->name() + ", order " + std::to_string(n_) + ", k=" + std::to_string(k_) + "]"; }

 private:
  // keep (n, k) with gcd(n, k) = 1 so equal characters compare equal
  void reduce() {
    if (k_ == 0) {
      n_ = 1;
      return;
    }
    const i64 g = std::gcd(n_, k_);
    n_ /= g;
    k_ /= g;
  }

  FieldPtr field_;
  i64 n_ = 1;
  i64 k_ = 0;
};

inline CycloValue char_eval(const MultCharacter& chi, const FieldElement& u) { return chi(u); }

/// Unnormalized sum of chi(u) zeta_p^Tr(u) over nonzero u, as an element of Q(zeta_lcm(n,p)).
inline CycloValue gauss_sum_algebraic(const MultCharacter& chi) {
  const auto& F = *chi.field();
  const std::int64_t n = chi.order(), p = F.p();
  const std::int64_t m = std::lcm(n, p);
  std::vector<std::int64_t> coeffs(static_cast<std::size_t>(m), 0);
  for (std::int64_t u = 1; u < F.q(); ++u) {
    const std::int64_t a = (chi.exponent() * (F.log(u) % n)) % n;
    const std::int64_t idx = (a * (m / n) + F.trace(u) * (m / p)) % m;
    ++coeffs[static_cast<std::size_t>(idx)];
  }
  return CycloValue::from_exponent_coeffs(static_cast<int>(m), coeffs);
}

/// tau(chi) / q^(1/2).
inline NormalizedValue gauss_sum(const MultCharacter& chi) {
  if (chi.is_trivial()) fail(ErrorKind::trivial_character, "Gauss sum of the trivial character");
  return NormalizedValue(gauss_sum_algebraic(chi), {{chi.field()->p(), -chi.field()->f()}});
}

/// Product of normalized Gauss sums tau(chi_j)^(n_j), with tau(trivial) = 1.
inline NormalizedValue gauss_sum_virtual(const std::vector<std::pair<MultCharacter, std::int64_t>>& constituents) {
  NormalizedValue acc;
  for (const auto& [chi, mult] : constituents) {
    if (chi.is_trivial() || mult == 0) continue;
    const NormalizedValue t = gauss_sum(chi);
    acc = acc * t.pow(mult);
  }
  return acc;
}

}  // namespace rootsign::exact
