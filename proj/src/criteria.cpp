#include "qpr/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpr {

Rat128 SieveParams::m() const {
  Rat128 v(1);
  for (uint64_t p : kernel)
    v = v * Rat128(static_cast<__int128>(p - 1), static_cast<__int128>(p));
  return v;
}

Rat128 SieveParams::delta() const {
  Rat128 v(1);
  for (uint64_t p : sieving)
    v = v - Rat128(2, static_cast<__int128>(p));
  return v;
}

Rat128 SieveParams::eps() const {
  Rat128 v(0);
  for (uint64_t p : large)
    v = v + Rat128(1, static_cast<__int128>(p));
  return v;
}

bool conservative_greater(double lhs, double rhs) {
  return lhs > rhs * (1.0 + 1e-9) && (lhs - rhs) > 1e-9 * std::max(1.0, rhs);
}

CriterionResult basic_criterion(uint64_t q, const Factorization& q1f) {
  int omega = q1f.omega();
  if (omega > 31) throw std::domain_error("basic_criterion: omega out of range");
  CriterionResult res;
  res.criterion = Criterion::kBasic;
  res.lhs = static_cast<double>(q);
  // 4 W^4 = 2^(4 omega + 2) fits 128 bits for omega <= 31; the comparison
  // is exact for every representable q.
  unsigned __int128 threshold = static_cast<unsigned __int128>(1)
                                << (4 * omega + 2);
  res.rhs = std::ldexp(1.0, 4 * omega + 2);
  res.passed = static_cast<unsigned __int128>(q) > threshold;
  res.margin = res.lhs - res.rhs;
  return res;
}

CriterionResult cohen_criterion(uint64_t q, const SieveParams& params) {
  if (params.r() != 0)
    throw std::domain_error("cohen_criterion: large-prime tier not allowed");
  for (uint64_t p : params.sieving)
    for (uint64_t kp : params.kernel)
      if (p == kp) throw std::domain_error("cohen_criterion: prime sets overlap");
  CriterionResult res;
  res.criterion = Criterion::kCohen;
  res.s = params.s();
  res.params = params;
  res.lhs = static_cast<double>(q);
  Rat128 delta = params.delta();
  if (!delta.positive()) {
    res.passed = false;
    res.reason = "delta nonpositive";
    res.rhs = std::numeric_limits<double>::infinity();
    return res;
  }
  double W = static_cast<double>(params.W());
  double sq = std::sqrt(static_cast<double>(q));
  double tail = 3.0 * W / (2.0 * sq);
  double K = static_cast<double>(2 * params.s() - 1) / delta.to_double() + 2.0;
  double inner = K * (2.0 * W * (W - 1.5) + tail) + 1.0 + tail;
  res.rhs = inner * inner;
  res.passed = conservative_greater(res.lhs, res.rhs);
  res.margin = res.lhs - res.rhs;
  return res;
}

CriterionResult mps_criterion(uint64_t q, const SieveParams& params) {
  if (params.r() < 1)
    throw std::domain_error("mps_criterion: needs at least one large prime");
  for (uint64_t p : params.sieving)
    for (uint64_t kp : params.kernel)
      if (p == kp) throw std::domain_error("mps_criterion: prime sets overlap");
  CriterionResult res;
  res.criterion = Criterion::kMps;
  res.s = params.s();
  res.r = params.r();
  res.params = params;
  double sq = std::sqrt(static_cast<double>(q));
  res.lhs = sq;
  Rat128 m = params.m();
  Rat128 delta = params.delta();
  Rat128 eps = params.eps();
  Rat128 gate = m * m * delta - (eps + eps);
  if (!delta.positive() || !gate.positive()) {
    res.passed = false;
    res.reason = "m^2 delta <= 2 eps";
    res.rhs = std::numeric_limits<double>::infinity();
    return res;
  }
  double W = static_cast<double>(params.W());
  double md = m.to_double();
  double dd = delta.to_double();
  double ed = eps.to_double();
  double m2 = md * md;
  double r = static_cast<double>(params.r());
  double U = 2.0 * W * (W - 1.5) + 3.0 * W / (2.0 * sq);
  double num = m2 * (2.0 * params.s() - 1.0 + 2.0 * dd) * U + dd + r - ed +
               (1.0 / sq) * (1.5 * m2 * dd * W + 2.0 * r - ed);
  res.rhs = num / gate.to_double();
  res.passed = conservative_greater(res.lhs, res.rhs);
  res.margin = res.lhs - res.rhs;
  return res;
}

namespace {

// Keep the attempt with the smallest informative rhs for reporting.
void consider(CriterionResult& best, bool& have, const CriterionResult& cand) {
  if (!have) {
    best = cand;
    have = true;
    return;
  }
  bool best_informative = best.reason.empty();
  bool cand_informative = cand.reason.empty();
  if (cand_informative && (!best_informative || cand.rhs < best.rhs)) best = cand;
}

}  // namespace

CriterionResult best_split(uint64_t q, const Factorization& q1f, Criterion mode) {
  if (mode == Criterion::kBasic) return basic_criterion(q, q1f);

  std::vector<uint64_t> primes = q1f.primes();
  int omega = q1f.omega();
  CriterionResult best;
  best.criterion = mode;
  best.rhs = std::numeric_limits<double>::infinity();
  best.reason = "no admissible split";
  bool have = false;

  if (mode == Criterion::kCohen) {
    for (int s = 1; s <= omega - 1; ++s) {
      SieveParams sp;
      sp.kernel.assign(primes.begin(), primes.end() - s);
      sp.sieving.assign(primes.end() - s, primes.end());
      CriterionResult r = cohen_criterion(q, sp);
      if (r.passed) return r;
      consider(best, have, r);
    }
    return best;
  }

  // Modified prime sieve. Odd q: 2 must stay in the kernel (at least one
  // kernel prime). Even q: the kernel may be empty. The large tier takes
  // the largest primes; r = 2 is attempted only after r = 1 fails for
  // every s (the early return on success enforces this ordering).
  int min_kernel = (q % 2 == 0) ? 0 : 1;
  for (int r = 1; r <= 2; ++r) {
    for (int s = 1; s <= omega - r - min_kernel; ++s) {
      int nk = omega - r - s;
      SieveParams sp;
      sp.kernel.assign(primes.begin(), primes.begin() + nk);
      sp.sieving.assign(primes.begin() + nk, primes.begin() + nk + s);
      sp.large.assign(primes.begin() + nk + s, primes.end());
      CriterionResult res = mps_criterion(q, sp);
      if (res.passed) return res;
      consider(best, have, res);
    }
  }
  return best;
}

uint64_t generic_bound(int omega, Criterion mode) {
  if (omega < 1 || omega > 16)
    throw std::domain_error("generic_bound: omega out of range");
  if (mode == Criterion::kBasic) {
    int bits = 4 * omega + 2;
    if (bits >= 64) return UINT64_MAX;
    return uint64_t{1} << bits;
  }
  if (mode != Criterion::kCohen)
    throw std::domain_error("generic_bound: unsupported mode");
  if (omega < 2) throw std::domain_error("generic_bound: cohen needs omega >= 2");

  // Minimal-product prime assumption: the class's least q-1 uses the first
  // omega primes; iterate B -> rhs(B) from that minimal q to the fixed
  // point that dominates every member, then take the best s.
  std::vector<uint64_t> primes;
  uint64_t p = 2;
  for (int i = 0; i < omega; ++i) {
    primes.push_back(p);
    do { ++p; } while (!is_prime_u64(p));
  }
  uint64_t q0 = 1;
  for (uint64_t pr : primes) q0 *= pr;
  q0 += 1;

  uint64_t best = UINT64_MAX;
  for (int s = 1; s <= omega - 1; ++s) {
    SieveParams sp;
    sp.kernel.assign(primes.begin(), primes.end() - s);
    sp.sieving.assign(primes.end() - s, primes.end());
    Rat128 delta = sp.delta();
    if (!delta.positive()) continue;
    double W = static_cast<double>(sp.W());
    double K = static_cast<double>(2 * s - 1) / delta.to_double() + 2.0;
    double B = static_cast<double>(q0);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
      double sq = std::sqrt(B);
      double tail = 3.0 * W / (2.0 * sq);
      double inner = K * (2.0 * W * (W - 1.5) + tail) + 1.0 + tail;
      double next = inner * inner;
      if (std::abs(next - B) < 0.5) {
        B = next;
        converged = true;
        break;
      }
      B = next;
    }
    if (!converged) continue;
    best = std::min(best, static_cast<uint64_t>(std::ceil(B)));
  }
  return best;
}

}  // namespace qpr
