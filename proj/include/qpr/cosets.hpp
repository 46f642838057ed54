#pragma once

#include <cstdint>
#include <vector>

#include "qpr/gf.hpp"

namespace qpr {

// Decomposition data for one strategy level n (odd q only): the unitary
// divisor d keeps the largest primes of q-1, e is the product of the first
// n distinct primes, and sign classes split the nonzero elements by
// half-system membership of their discrete log mod each prime of d.
struct CosetContext {
  const FieldCtx* field = nullptr;
  int n = 0;
  uint64_t d = 1;
  uint64_t e = 1;
  std::vector<uint64_t> Sd;            // primes of d, ascending
  std::vector<uint32_t> A_logs;        // logs of the coset transversal, size e
  std::vector<uint32_t> P_logs;        // logs of the primitive roots, ascending
  // classes[mask] holds the P_logs whose residue mod Sd[i] lies in the
  // half-system selected by bit i (0 = lower, 1 = upper); residue 0 cannot
  // occur because every prime of d divides the radical of q - 1.
  std::vector<std::vector<uint32_t>> classes;
};

struct CosetCertificate {
  bool b_zero_branch = false;  // failing condition: false = squared branch
  uint32_t alpha_log = 0;      // unused on the b = 0 branch
  uint32_t beta_log = 0;
  uint32_t eps_mask = 0;       // unused on the b = 0 branch
  uint32_t delta_mask = 0;
  FieldElem missing_target = 0;
};

struct CosetVerdict {
  uint64_t q = 0;
  int n = 0;
  uint64_t d = 1;
  uint64_t e = 1;
  bool satisfied = false;
  bool certificate_present = false;
  CosetCertificate certificate;
  double elapsed_seconds = 0.0;
};

// Builds the level-n context. Throws std::domain_error for even q or
// n outside [1, number of distinct primes of q-1].
CosetContext build_coset_context(const FieldCtx& ctx, int n);

// Checks, for every transversal pair (alpha, beta) and every pair of sign
// vectors, that {(alpha x + 1)^2 - beta y} covers all nonzero elements with
// x, y primitive in the selected classes, plus the b = 0 companion
// {x^2 - beta y} over all primitive x. Naive pair enumeration into a
// bitmap with epoch reset and early exit on full coverage.
CosetVerdict check_hypotheses(const CosetContext& cc, int workers = 1);

// Tries n = 1, 2, ..., s in order; returns the first satisfied verdict.
// At n = s the test degenerates to an exhaustive search, so the returned
// verdict always equals ground truth when no earlier level succeeds.
CosetVerdict escalate(const FieldCtx& ctx, int workers = 1);

}  // namespace qpr
