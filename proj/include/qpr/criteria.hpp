#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qpr/numtheory.hpp"

namespace qpr {

enum class Criterion { kBasic, kCohen, kMps };

// A (kernel, sieving, large) split of the distinct primes of q-1 with the
// derived exact-rational quantities. The kernel holds the smallest primes,
// the large set (when present) the largest.
struct SieveParams {
  std::vector<uint64_t> kernel;   // primes kept out of the sieve
  std::vector<uint64_t> sieving;  // p_1 ... p_s
  std::vector<uint64_t> large;    // l_1 ... l_r (empty unless the modified sieve)

  uint64_t W() const { return uint64_t{1} << kernel.size(); }
  int s() const { return static_cast<int>(sieving.size()); }
  int r() const { return static_cast<int>(large.size()); }
  Rat128 m() const;      // prod over kernel of (1 - 1/p)
  Rat128 delta() const;  // 1 - 2 sum over sieving of 1/p
  Rat128 eps() const;    // sum over large of 1/l
};

struct CriterionResult {
  bool passed = false;
  Criterion criterion = Criterion::kBasic;
  int s = 0;
  int r = 0;
  double lhs = 0.0;  // q, or sqrt(q) for the modified sieve
  double rhs = 0.0;  // conservative threshold the lhs must strictly exceed
  double margin = 0.0;
  std::string reason;  // set when a precondition rules the test out
  SieveParams params;
};

// Strict inequality with a relative guard band: near-ties fail.
bool conservative_greater(double lhs, double rhs);

// Passes iff q > 4 W(q-1)^4, evaluated in 128-bit integer arithmetic.
CriterionResult basic_criterion(uint64_t q, const Factorization& q1f);

// The sieve inequality on q with kernel/sieving split (r must be 0):
//   q > {((2s-1)/delta + 2)(2W(W-3/2) + 3W/(2 sqrt q)) + 1 + 3W/(2 sqrt q)}^2.
CriterionResult cohen_criterion(uint64_t q, const SieveParams& params);

// The modified prime sieve on sqrt(q) with an additional large-prime tier
// (r >= 1); gated by m^2 delta > 2 eps in exact rationals.
CriterionResult mps_criterion(uint64_t q, const SieveParams& params);

// Strategy iteration: kernel takes the smallest primes, sieving the s
// largest below the large tier. Returns the first passing configuration,
// else the attempt with the smallest rhs.
//
// For the modified sieve on even q the kernel is allowed to be empty
// (W = 1, m = 1): q-1 is odd, so the evenness constraint that pins 2 into
// the kernel for odd q does not arise. The empty-kernel split is what
// eliminates q = 64 analytically; without it 64 would need an exhaustive
// check despite comfortably satisfying the sqrt(q) inequality at W = 1.
CriterionResult best_split(uint64_t q, const Factorization& q1f, Criterion mode);

// Worst-case elimination threshold for an omega class: every q with
// omega(q-1) == omega and q > B is eliminated by the mode's criterion.
// basic: 4 * 2^(4 omega), saturated to UINT64_MAX when it overflows.
// cohen: fixed-point iteration of the rhs starting at the class's minimal
// q (primorial(omega) + 1), minimized over s.
uint64_t generic_bound(int omega, Criterion mode);

}  // namespace qpr
