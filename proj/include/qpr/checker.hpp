#pragma once

#include <cstdint>
#include <string>

#include "qpr/gf.hpp"

namespace qpr {

struct CheckReport {
  uint64_t q = 0;
  bool verified = false;  // false => exception, witness holds
  Triple witness;         // reported in the original (a, b, c) parametrization
  uint64_t triples_examined = 0;
  double elapsed_seconds = 0.0;
};

// Exhaustive verification over the normalized form a(g^2 + bg + c).
//
// c and b run over all field elements (generator powers first, then 0);
// pairs with b^2 - 4c = 0 are skipped. For each (b, c) the scale factor
// a = gamma^j only matters through j mod R, R = Rad(q-1), so j < R. A pair
// (j, b, c) succeeds when some primitive g = gamma^n (gcd(n, R) = 1) gives
// l = log(g^2 + bg + c) with gcd(j + l, R) = 1; logs of g^2 + bg + c are
// cached per (b, c) and extended on demand. Exhausting every primitive
// exponent for some (j, b, c) certifies an exception with witness
// (a, b', c') = (gamma^j, gamma^j b, gamma^j c).
CheckReport check_q(const FieldCtx& ctx);

// Direct double-loop test: does some primitive g make Q(g) primitive?
// No log caching, no scale normalization; the independent oracle.
bool naive_oracle(const FieldCtx& ctx, const Triple& t);

// Full scan driven solely by naive_oracle over every admissible triple
// (all a != 0, no scale reduction). Slow; exists to cross-validate
// check_q on small fields.
CheckReport naive_check_q(const FieldCtx& ctx);

}  // namespace qpr
