#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpr/checker.hpp"
#include "qpr/cosets.hpp"
#include "qpr/criteria.hpp"
#include "qpr/numtheory.hpp"

namespace qpr {

// One enumerated candidate q = p^k with the criterion that removed it
// (or none, making it a survivor of the whole cascade).
struct CandidateRecord {
  PrimePower pp;
  Factorization q1f;
  int omega = 0;
  bool eliminated = false;
  CriterionResult decisive;  // the eliminating result, or the closest miss
  bool survivor() const { return !eliminated; }
};

// Per-omega bookkeeping: enumeration bound, candidate count, and the
// population that survives each stage of the cascade.
struct PipelineStage {
  int omega = 0;
  uint64_t bound = 0;
  uint64_t candidates = 0;
  uint64_t post_cohen_primes = 0;
  uint64_t post_cohen_pps = 0;
  uint64_t post_mps_primes = 0;
  uint64_t post_mps_pps = 0;
  uint64_t largest_survivor = 0;
};

struct PipelineResult {
  int max_omega = 0;
  std::vector<PipelineStage> stages;       // omega = 1 .. max_omega
  std::vector<CandidateRecord> survivors;  // ascending q, q = 2 included
};

// Runs the whole elimination cascade: per omega class, bound the candidate
// range, enumerate prime powers with that many distinct primes in q-1, and
// apply the power-saving criterion, then the sieve criterion, then the
// modified-prime-sieve criterion. q = 2 is appended as a survivor of its
// own empty class (omega = 0): no criterion applies and it is a known
// exception. Deterministic for any worker count: results are merged by
// candidate index, never by completion order.
// Throws std::runtime_error naming the required bound when the SPF table
// is too small.
PipelineResult run_pipeline(int max_omega, const SpfTable& spf,
                            int workers = 1);

// Smallest SPF-table bound that covers every omega class up to max_omega
// (the largest per-class enumeration bound).
uint64_t pipeline_required_bound(int max_omega);

// Final verdict for one survivor: even q go straight to the exhaustive
// checker; odd q try the coset escalation first and fall back to the
// checker when no level is satisfied (the fallback also produces the
// witness for true exceptions).
struct ClassifyResult {
  uint64_t q = 0;
  bool verified = false;
  std::string method;  // "cosets" or "checker"
  std::optional<Triple> witness;          // present for exceptions
  std::optional<CosetVerdict> cosets;     // present when cosets ran
  std::optional<CheckReport> check;       // present when the checker ran
  double elapsed_seconds = 0.0;
};

ClassifyResult classify_survivor(const FieldCtx& ctx, int workers = 1);

// Table-1-style summary: one row per omega with the largest surviving q and
// the post-sieve / post-modified-sieve populations split into primes and
// proper prime powers.
void write_summary_csv(const PipelineResult& result, const std::string& path);

// One JSON object per surviving q:
// {"q":..., "pp":bool, "omega":..., "factors":[[p,e],...], "eliminated_by":null}
void write_survivors_jsonl(const PipelineResult& result,
                           const std::string& path);

}  // namespace qpr
