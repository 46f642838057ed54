#include "qpr/cosets.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qpr {

namespace {

// Combos are laid out on a single index line so any worker split keeps a
// global order: all squared-branch combos (la, lb, eps_mask, delta_mask)
// nested in that order, followed by the b = 0 combos (lb, delta_mask).
struct ComboLayout {
  uint64_t e = 1;
  uint64_t nmask = 1;
  uint64_t squared_total = 0;
  uint64_t total = 0;

  explicit ComboLayout(const CosetContext& cc)
      : e(cc.A_logs.size()), nmask(cc.classes.size()) {
    squared_total = e * e * nmask * nmask;
    total = squared_total + e * nmask;
  }

  CosetCertificate decode(uint64_t idx, const CosetContext& cc) const {
    CosetCertificate cert;
    if (idx < squared_total) {
      uint64_t dm = idx % nmask;
      idx /= nmask;
      uint64_t em = idx % nmask;
      idx /= nmask;
      uint64_t lb = idx % e;
      uint64_t la = idx / e;
      cert.b_zero_branch = false;
      cert.alpha_log = cc.A_logs[la];
      cert.beta_log = cc.A_logs[lb];
      cert.eps_mask = static_cast<uint32_t>(em);
      cert.delta_mask = static_cast<uint32_t>(dm);
    } else {
      idx -= squared_total;
      cert.b_zero_branch = true;
      cert.beta_log = cc.A_logs[idx / nmask];
      cert.delta_mask = static_cast<uint32_t>(idx % nmask);
    }
    return cert;
  }
};

// Reusable coverage bitmap with epoch stamps so clearing between combos is
// a counter bump, not a memset.
class CoverScratch {
 public:
  explicit CoverScratch(uint32_t q1) : q1_(q1), stamp_(q1, 0) {}

  // Tests whether {(gamma^la * x + 1)^2 - gamma^lb * y} (squared branch) or
  // {x^2 - gamma^lb * y} (b = 0 branch) hits every nonzero element, with x
  // drawn from xs and y from ys (both given as discrete logs). All work is
  // in log space via the add-one table. When the combo fails and missing is
  // non-null, *missing receives the smallest uncovered log.
  bool run(const FieldCtx& F, const CosetCertificate& combo,
           const std::vector<uint32_t>& xs, const std::vector<uint32_t>& ys,
           uint32_t* missing) {
    ++epoch_;
    count_ = 0;
    const uint32_t q1 = q1_;
    const uint32_t m1 = F.minus_one_log();
    const uint32_t lb = combo.beta_log;

    // Logs of beta * y for the whole y class, computed once per combo.
    lby_.resize(ys.size());
    for (size_t j = 0; j < ys.size(); ++j) {
      uint32_t v = lb + ys[j];
      lby_[j] = v >= q1 ? v - q1 : v;
    }

    bool full = false;
    if (combo.b_zero_branch) {
      for (uint32_t lx : xs) {
        uint32_t l2 = 2 * lx;
        l2 = l2 >= q1 ? l2 - q1 : l2;
        if (mark_row(F, l2, m1, q1)) {
          full = true;
          break;
        }
      }
    } else {
      const uint32_t la = combo.alpha_log;
      for (uint32_t lx : xs) {
        uint32_t s1 = la + lx;
        s1 = s1 >= q1 ? s1 - q1 : s1;
        if (s1 == m1) {
          // alpha * x = -1, so the square vanishes and the targets are the
          // logs of -beta*y directly.
          for (uint32_t lby : lby_) {
            uint32_t t = m1 + lby;
            mark(t >= q1 ? t - q1 : t);
          }
          if (count_ == q1) {
            full = true;
            break;
          }
          continue;
        }
        uint32_t l2 = 2 * F.zech(s1);
        l2 = l2 >= q1 ? l2 - q1 : l2;
        if (mark_row(F, l2, m1, q1)) {
          full = true;
          break;
        }
      }
    }
    if (full) return true;
    if (missing != nullptr) {
      *missing = 0;
      for (uint32_t t = 0; t < q1; ++t) {
        if (stamp_[t] != epoch_) {
          *missing = t;
          break;
        }
      }
    }
    return false;
  }

 private:
  // Marks the targets gamma^l2 - gamma^lby over the prepared lby row, using
  // gamma^a - gamma^b = gamma^(b + m1) * (gamma^(a - b + m1) + 1). Returns
  // true the moment coverage is complete.
  bool mark_row(const FieldCtx& F, uint32_t l2, uint32_t m1, uint32_t q1) {
    for (uint32_t lby : lby_) {
      uint32_t dd = l2 >= lby ? l2 - lby : l2 + q1 - lby;
      if (dd == 0) continue;  // the difference is zero, not a unit
      uint32_t z = dd + m1;
      z = z >= q1 ? z - q1 : z;
      uint32_t t = lby + m1;
      t = t >= q1 ? t - q1 : t;
      t += F.zech(z);
      mark(t >= q1 ? t - q1 : t);
    }
    return count_ == q1;
  }

  void mark(uint32_t t) {
    if (stamp_[t] != epoch_) {
      stamp_[t] = epoch_;
      ++count_;
    }
  }

  uint32_t q1_;
  std::vector<uint32_t> stamp_;
  std::vector<uint32_t> lby_;
  uint32_t epoch_ = 0;
  uint32_t count_ = 0;
};

}  // namespace

CosetContext build_coset_context(const FieldCtx& ctx, int n) {
  if (ctx.q() % 2 == 0) {
    throw std::domain_error("coset decomposition requires odd q");
  }
  const Factorization& f = ctx.order_factorization();
  const int s = static_cast<int>(f.factors.size());
  if (n < 1 || n > s) {
    throw std::domain_error("level must lie in [1, number of prime factors]");
  }

  CosetContext cc;
  cc.field = &ctx;
  cc.n = n;
  for (int i = 0; i < s; ++i) {
    const Factor& fac = f.factors[i];
    if (i < n) {
      cc.e *= fac.p;
    } else {
      cc.Sd.push_back(fac.p);
      for (uint32_t j = 0; j < fac.k; ++j) cc.d *= fac.p;
    }
  }

  const uint64_t q1 = ctx.order();
  cc.A_logs.reserve(cc.e);
  for (uint64_t j = 0; j < cc.e; ++j) {
    cc.A_logs.push_back(static_cast<uint32_t>(j * cc.d % q1));
  }

  const uint64_t rad = ctx.order_radical();
  for (uint64_t t = 0; t < q1; ++t) {
    if (std::gcd(t, rad) == 1) cc.P_logs.push_back(static_cast<uint32_t>(t));
  }

  // Partition the primitive logs by sign pattern: bit i of the mask is 0
  // when t mod Sd[i] falls in the lower half system {1..(p-1)/2}. Residue 0
  // cannot occur because every prime of d divides the radical.
  cc.classes.assign(size_t{1} << cc.Sd.size(), {});
  for (uint32_t t : cc.P_logs) {
    uint32_t mask = 0;
    for (size_t i = 0; i < cc.Sd.size(); ++i) {
      uint64_t v = t % cc.Sd[i];
      if (v > (cc.Sd[i] - 1) / 2) mask |= uint32_t{1} << i;
    }
    cc.classes[mask].push_back(t);
  }
  return cc;
}

CosetVerdict check_hypotheses(const CosetContext& cc, int workers) {
  const auto start = std::chrono::steady_clock::now();
  const FieldCtx& F = *cc.field;
  const uint32_t q1 = static_cast<uint32_t>(F.order());
  const ComboLayout layout(cc);

  CosetVerdict verdict;
  verdict.q = F.q();
  verdict.n = cc.n;
  verdict.d = cc.d;
  verdict.e = cc.e;

  if (workers < 1) workers = 1;
  const uint64_t nthreads =
      std::min<uint64_t>(static_cast<uint64_t>(workers), layout.total);
  std::atomic<uint64_t> next{0};
  std::atomic<uint64_t> first_fail{UINT64_MAX};
  constexpr uint64_t kChunk = 16;

  auto sweep = [&]() {
    CoverScratch scratch(q1);
    for (;;) {
      const uint64_t base = next.fetch_add(kChunk);
      if (base >= layout.total) break;
      const uint64_t end = std::min(base + kChunk, layout.total);
      if (base >= first_fail.load(std::memory_order_relaxed)) break;
      for (uint64_t idx = base; idx < end; ++idx) {
        if (idx >= first_fail.load(std::memory_order_relaxed)) break;
        const CosetCertificate combo = layout.decode(idx, cc);
        const std::vector<uint32_t>& xs =
            combo.b_zero_branch ? cc.P_logs : cc.classes[combo.eps_mask];
        const std::vector<uint32_t>& ys = cc.classes[combo.delta_mask];
        if (!scratch.run(F, combo, xs, ys, nullptr)) {
          // Record the smallest failing combo index; the certificate is
          // reconstructed afterwards so the result is scheduling-independent.
          uint64_t cur = first_fail.load(std::memory_order_relaxed);
          while (idx < cur &&
                 !first_fail.compare_exchange_weak(cur, idx,
                                                   std::memory_order_relaxed)) {
          }
        }
      }
    }
  };

  if (nthreads <= 1) {
    sweep();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (uint64_t i = 0; i < nthreads; ++i) pool.emplace_back(sweep);
    for (std::thread& t : pool) t.join();
  }

  const uint64_t fail_idx = first_fail.load();
  if (fail_idx == UINT64_MAX) {
    verdict.satisfied = true;
  } else {
    verdict.satisfied = false;
    verdict.certificate_present = true;
    verdict.certificate = layout.decode(fail_idx, cc);
    CoverScratch scratch(q1);
    uint32_t missing_log = 0;
    const CosetCertificate& combo = verdict.certificate;
    const std::vector<uint32_t>& xs =
        combo.b_zero_branch ? cc.P_logs : cc.classes[combo.eps_mask];
    const std::vector<uint32_t>& ys = cc.classes[combo.delta_mask];
    scratch.run(F, combo, xs, ys, &missing_log);
    verdict.certificate.missing_target = F.exp(missing_log);
  }

  verdict.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return verdict;
}

CosetVerdict escalate(const FieldCtx& ctx, int workers) {
  const auto start = std::chrono::steady_clock::now();
  const int s = static_cast<int>(ctx.order_factorization().factors.size());
  CosetVerdict verdict;
  for (int n = 1; n <= s; ++n) {
    CosetContext cc = build_coset_context(ctx, n);
    verdict = check_hypotheses(cc, workers);
    if (verdict.satisfied) break;
  }
  verdict.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return verdict;
}

}  // namespace qpr
