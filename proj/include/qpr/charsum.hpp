#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qpr/gf.hpp"

namespace qpr {

struct CharSumValue {
  std::complex<double> value;
  uint64_t d1 = 1, d2 = 1;
  Triple triple;
};

struct CountResult {
  uint64_t N = 0;
  uint64_t e1 = 1, e2 = 1;
  Triple triple;
  double residual = 0.0;  // |complex value - rounded integer| for the expansion path
};

// Violations are reported per character pair; an empty list means the audit
// passed for every squarefree pair.
struct WeilViolation {
  uint64_t d1, j1, d2, j2;
  std::complex<double> S;
  double bound;
  std::string bound_class;
};

struct WeilAuditReport {
  uint64_t q = 0;
  Triple triple;
  // Max observed |S| per class, with the class bound next to it.
  double max_principal = 0.0;     // S(chi_1, chi_1), compared against q-3 from below
  double max_d1_only = 0.0;       // d1 > 1, d2 = 1: bound 2
  double max_d2_only = 0.0;       // d1 = 1, d2 > 1: bound sqrt(q)+1
  double max_both = 0.0;          // d1, d2 > 1: bound 2 sqrt(q)
  std::vector<WeilViolation> violations;
  bool passed() const { return violations.empty(); }
};

// S(chi_{d1}, chi_{d2}) = sum over all g in F_q of chi1(g) * chi2(Q(g)),
// with chi(0) = 0 for every character. Kahan-compensated accumulation.
CharSumValue char_sum(const FieldCtx& ctx, const Triple& t, const Character& chi1,
                      const Character& chi2);

// Exact count of e1-free g with Q(g) e2-free, by direct enumeration.
CountResult count_free_pairs(const FieldCtx& ctx, const Triple& t, uint64_t e1,
                             uint64_t e2);

// Same count through the character expansion; throws std::runtime_error when
// the rounding residual exceeds 1e-3.
CountResult count_via_characters(const FieldCtx& ctx, const Triple& t, uint64_t e1,
                                 uint64_t e2);

WeilAuditReport weil_audit(const FieldCtx& ctx, const Triple& t);

// Deterministic admissible-triple sampler for audits (seeded mt19937_64).
std::vector<Triple> sample_admissible_triples(const FieldCtx& ctx, size_t count,
                                              uint64_t seed);

}  // namespace qpr
