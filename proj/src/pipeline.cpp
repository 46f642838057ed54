#include "qpr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "qpr/gf.hpp"

namespace qpr {

namespace {

uint64_t class_bound(int omega) {
  uint64_t bound = generic_bound(omega, Criterion::kBasic);
  if (omega >= 2) {
    bound = std::min(bound, generic_bound(omega, Criterion::kCohen));
  }
  return bound;
}

// Full cascade for one candidate. The decisive result is the first passing
// criterion; for survivors it is the failing result with the smallest
// right-hand side (the closest miss).
CandidateRecord classify_candidate(const PrimePower& pp,
                                   const SpfTable& spf) {
  CandidateRecord rec;
  rec.pp = pp;
  rec.q1f = spf.factorize(pp.q - 1);
  rec.omega = static_cast<int>(rec.q1f.factors.size());

  CriterionResult basic = basic_criterion(pp.q, rec.q1f);
  if (basic.passed) {
    rec.eliminated = true;
    rec.decisive = basic;
    return rec;
  }
  CriterionResult cohen = best_split(pp.q, rec.q1f, Criterion::kCohen);
  if (cohen.passed) {
    rec.eliminated = true;
    rec.decisive = cohen;
    return rec;
  }
  CriterionResult mps = best_split(pp.q, rec.q1f, Criterion::kMps);
  if (mps.passed) {
    rec.eliminated = true;
    rec.decisive = mps;
    return rec;
  }
  rec.eliminated = false;
  rec.decisive = mps.rhs <= cohen.rhs ? mps : cohen;
  return rec;
}

}  // namespace

uint64_t pipeline_required_bound(int max_omega) {
  if (max_omega < 1) throw std::domain_error("max_omega must be >= 1");
  uint64_t needed = 0;
  for (int omega = 1; omega <= max_omega; ++omega) {
    needed = std::max(needed, class_bound(omega));
  }
  return needed;
}

PipelineResult run_pipeline(int max_omega, const SpfTable& spf, int workers) {
  uint64_t needed = pipeline_required_bound(max_omega);
  if (spf.bound() < needed) {
    throw std::runtime_error(
        "SPF table covers " + std::to_string(spf.bound()) +
        " but the enumeration needs " + std::to_string(needed));
  }

  PipelineResult result;
  result.max_omega = max_omega;

  // q = 2 sits in its own class: q-1 = 1 has no prime factors, no criterion
  // speaks to it, and it is a known exception, so it survives to the output.
  {
    CandidateRecord two;
    two.pp = PrimePower{2, 2, 1};
    two.q1f = Factorization{1, {}};
    two.omega = 0;
    two.eliminated = false;
    result.survivors.push_back(two);
  }

  for (int omega = 1; omega <= max_omega; ++omega) {
    PipelineStage stage;
    stage.omega = omega;
    stage.bound = class_bound(omega);

    std::vector<PrimePower> candidates =
        enumerate_prime_powers(stage.bound, omega, spf);
    stage.candidates = candidates.size();

    // Indexed merge keeps the output independent of scheduling.
    std::vector<CandidateRecord> records(candidates.size());
    int nthreads = std::max(1, workers);
    nthreads = static_cast<int>(
        std::min<size_t>(nthreads, std::max<size_t>(candidates.size(), 1)));
    if (nthreads <= 1) {
      for (size_t i = 0; i < candidates.size(); ++i) {
        records[i] = classify_candidate(candidates[i], spf);
      }
    } else {
      std::atomic<size_t> next{0};
      auto work = [&]() {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= candidates.size()) break;
          records[i] = classify_candidate(candidates[i], spf);
        }
      };
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (int t = 0; t < nthreads; ++t) pool.emplace_back(work);
      for (std::thread& t : pool) t.join();
    }

    for (CandidateRecord& rec : records) {
      const bool proper = rec.pp.k > 1;
      const bool past_cohen =
          !rec.eliminated || rec.decisive.criterion == Criterion::kMps;
      if (past_cohen) {
        (proper ? stage.post_cohen_pps : stage.post_cohen_primes)++;
      }
      if (!rec.eliminated) {
        (proper ? stage.post_mps_pps : stage.post_mps_primes)++;
        stage.largest_survivor = std::max(stage.largest_survivor, rec.pp.q);
        result.survivors.push_back(std::move(rec));
      }
    }
    result.stages.push_back(stage);
  }

  std::sort(result.survivors.begin(), result.survivors.end(),
            [](const CandidateRecord& a, const CandidateRecord& b) {
              return a.pp.q < b.pp.q;
            });
  return result;
}

ClassifyResult classify_survivor(const FieldCtx& ctx, int workers) {
  const auto start = std::chrono::steady_clock::now();
  ClassifyResult res;
  res.q = ctx.q();

  if (ctx.q() % 2 == 1) {
    CosetVerdict verdict = escalate(ctx, workers);
    res.cosets = verdict;
    if (verdict.satisfied) {
      res.verified = true;
      res.method = "cosets";
      res.elapsed_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();
      return res;
    }
  }

  CheckReport report = check_q(ctx);
  res.check = report;
  res.method = "checker";
  res.verified = report.verified;
  if (!report.verified) res.witness = report.witness;
  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return res;
}

void write_summary_csv(const PipelineResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "omega,largest_q,cohen_primes,cohen_pps,mps_primes,mps_pps\n";
  for (const PipelineStage& st : result.stages) {
    out << st.omega << ',' << st.largest_survivor << ','
        << st.post_cohen_primes << ',' << st.post_cohen_pps << ','
        << st.post_mps_primes << ',' << st.post_mps_pps << '\n';
  }
  if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

void write_survivors_jsonl(const PipelineResult& result,
                           const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  for (const CandidateRecord& rec : result.survivors) {
    out << "{\"q\":" << rec.pp.q << ",\"pp\":"
        << (rec.pp.k > 1 ? "true" : "false") << ",\"omega\":" << rec.omega
        << ",\"factors\":[";
    for (size_t i = 0; i < rec.q1f.factors.size(); ++i) {
      if (i > 0) out << ',';
      out << '[' << rec.q1f.factors[i].p << ',' << rec.q1f.factors[i].k
          << ']';
    }
    out << "],\"eliminated_by\":null}\n";
  }
  if (!out.flush()) throw std::runtime_error("write failed for " + path);
}

}  // namespace qpr
