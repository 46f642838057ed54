#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpr/numtheory.hpp"

namespace qpr {

// Canonical element encoding: the coefficient vector of the residue
// polynomial read base p, so every element of F_{p^k} is an integer in
// [0, q). For k = 1 this coincides with the usual residue in [0, p).
using FieldElem = uint32_t;

struct Triple {
  FieldElem a = 0, b = 0, c = 0;
};

struct Character {
  uint64_t d = 1;  // exact order, divides q-1
  uint64_t j = 1;  // index coprime to d
  uint64_t t = 0;  // evaluation exponent j*(q-1)/d
};

// Fully materialized field context: deterministic modulus and generator,
// full exponential/logarithm tables, and the "add one" table used to jump
// between additive and multiplicative representations.
class FieldCtx {
 public:
  // q must be a prime power below 2^25. Deterministic construction: the
  // modulus is the lexicographically smallest monic irreducible of degree k
  // (non-leading coefficients compared as a base-p integer, low degree
  // first); the generator is the nonzero element of smallest encoding with
  // multiplicative order exactly q-1.
  explicit FieldCtx(uint64_t q);

  uint64_t q() const { return q_; }
  uint64_t p() const { return p_; }
  uint32_t k() const { return k_; }
  uint64_t order() const { return q_ - 1; }
  const Factorization& order_factorization() const { return q1f_; }
  uint64_t order_radical() const { return radical_; }
  FieldElem generator() const { return generator_; }
  const std::vector<uint32_t>& modulus_coeffs() const { return modulus_; }

  // --- arithmetic on canonical encodings ---
  FieldElem add(FieldElem a, FieldElem b) const;
  FieldElem sub(FieldElem a, FieldElem b) const;
  FieldElem neg(FieldElem a) const;
  FieldElem mul(FieldElem a, FieldElem b) const;
  FieldElem inv(FieldElem a) const;  // a != 0
  FieldElem pow_elem(FieldElem a, uint64_t e) const;

  FieldElem exp(uint64_t n) const { return exp_[n % (q_ - 1)]; }
  // log of a nonzero element; sentinel for 0.
  static constexpr uint32_t kNoLog = UINT32_MAX;
  uint32_t log(FieldElem a) const { return log_[a]; }

  // zech(n) = log(gamma^n + 1); kNoLog when gamma^n = -1.
  uint32_t zech(uint64_t n) const { return zech_[n]; }
  // log(-1): (q-1)/2 for odd q, 0 for even q.
  uint32_t minus_one_log() const { return m1log_; }

  FieldElem eval_quadratic(const Triple& t, FieldElem g) const;
  bool admissible(const Triple& t) const;  // a != 0 and b^2 - 4ac != 0
  bool is_e_free(FieldElem g, uint64_t e) const;
  bool is_primitive(FieldElem g) const { return is_e_free(g, q_ - 1); }

  // --- multiplicative characters ---
  Character character(uint64_t d, uint64_t j) const;
  std::vector<Character> characters_of_order(uint64_t d) const;
  std::complex<double> char_value(const Character& chi, FieldElem g) const;
  // (q-1)-th roots of unity, indexed by exponent; built on first use.
  const std::vector<std::complex<double>>& unity_roots() const;

 private:
  void build_prime_field();
  void build_extension_field();
  bool poly_irreducible(const std::vector<uint32_t>& coeffs) const;
  FieldElem raw_mul(FieldElem a, FieldElem b, const std::vector<uint32_t>& mod) const;

  uint64_t q_ = 0;
  uint64_t p_ = 0;
  uint32_t k_ = 1;
  Factorization q1f_;
  uint64_t radical_ = 1;
  FieldElem generator_ = 0;
  std::vector<uint32_t> modulus_;  // degree-k monic: k non-leading coefficients
  std::vector<FieldElem> exp_;
  std::vector<uint32_t> log_;
  std::vector<uint32_t> zech_;
  uint32_t m1log_ = 0;
  mutable std::vector<std::complex<double>> roots_;
};

}  // namespace qpr
