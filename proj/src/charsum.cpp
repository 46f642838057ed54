#include "qpr/charsum.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qpr {

namespace {

class KahanSum {
 public:
  void add(std::complex<double> v) {
    std::complex<double> y = v - comp_;
    std::complex<double> t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  std::complex<double> value() const { return sum_; }

 private:
  std::complex<double> sum_{0.0, 0.0};
  std::complex<double> comp_{0.0, 0.0};
};

}  // namespace

CharSumValue char_sum(const FieldCtx& ctx, const Triple& t, const Character& chi1,
                      const Character& chi2) {
  if (!ctx.admissible(t)) throw std::domain_error("char_sum: inadmissible triple");
  const uint64_t q1 = ctx.order();
  const auto& roots = ctx.unity_roots();
  KahanSum acc;
  // g = 0 contributes chi1(0)*chi2(c) = 0; start from the nonzero elements.
  for (uint64_t n = 0; n < q1; ++n) {
    FieldElem g = ctx.exp(n);
    FieldElem v = ctx.eval_quadratic(t, g);
    if (v == 0) continue;
    uint64_t expo = (chi1.t % q1) * n % q1;
    expo = (expo + (chi2.t % q1) * ctx.log(v)) % q1;
    acc.add(roots[expo]);
  }
  return {acc.value(), chi1.d, chi2.d, t};
}

CountResult count_free_pairs(const FieldCtx& ctx, const Triple& t, uint64_t e1,
                             uint64_t e2) {
  const uint64_t q1 = ctx.order();
  uint64_t count = 0;
  for (uint64_t n = 0; n < q1; ++n) {
    FieldElem g = ctx.exp(n);
    if (!ctx.is_e_free(g, e1)) continue;
    FieldElem v = ctx.eval_quadratic(t, g);
    if (ctx.is_e_free(v, e2)) ++count;
  }
  return {count, e1, e2, t, 0.0};
}

CountResult count_via_characters(const FieldCtx& ctx, const Triple& t, uint64_t e1,
                                 uint64_t e2) {
  const Factorization& q1f = ctx.order_factorization();
  // Restrict to Rad(e): only squarefree character orders contribute.
  auto rad_of = [&](uint64_t e) {
    uint64_t r = 1;
    for (const auto& f : q1f.factors)
      if (e % f.p == 0) r *= f.p;
    return r;
  };
  Factorization f1 = rad_of(e1) == 1 ? Factorization{1, {}} : factorize(rad_of(e1));
  Factorization f2 = rad_of(e2) == 1 ? Factorization{1, {}} : factorize(rad_of(e2));
  auto theta = [](const Factorization& f) {
    Rat128 t(1);
    for (const auto& fac : f.factors)
      t = t * Rat128(static_cast<__int128>(fac.p - 1), static_cast<__int128>(fac.p));
    return t;
  };
  double th = theta(f1).to_double() * theta(f2).to_double();
  // phi of a squarefree divisor assembled from the parent's prime list.
  auto phi_sqfree = [&](uint64_t d, const Factorization& f) {
    double phi = 1;
    for (const auto& fac : f.factors)
      if (d % fac.p == 0) phi *= static_cast<double>(fac.p - 1);
    return phi;
  };

  KahanSum acc;
  for (const auto& [d1, mu1] : f1.squarefree_divisors()) {
    double phi1 = phi_sqfree(d1, f1);
    for (const auto& [d2, mu2] : f2.squarefree_divisors()) {
      double phi2 = phi_sqfree(d2, f2);
      double coeff = (mu1 * mu2) / (phi1 * phi2);
      for (const auto& chi1 : ctx.characters_of_order(d1)) {
        for (const auto& chi2 : ctx.characters_of_order(d2)) {
          auto s = char_sum(ctx, t, chi1, chi2);
          acc.add(coeff * s.value);
        }
      }
    }
  }
  std::complex<double> total = th * acc.value();
  double rounded = std::round(total.real());
  double residual = std::abs(total - std::complex<double>(rounded, 0.0));
  if (residual > 1e-3)
    throw std::runtime_error("count_via_characters: rounding residual too large");
  CountResult r;
  r.N = static_cast<uint64_t>(rounded < 0 ? 0 : rounded);
  r.e1 = e1;
  r.e2 = e2;
  r.triple = t;
  r.residual = residual;
  return r;
}

WeilAuditReport weil_audit(const FieldCtx& ctx, const Triple& t) {
  WeilAuditReport report;
  report.q = ctx.q();
  report.triple = t;
  const double sq = std::sqrt(static_cast<double>(ctx.q()));
  const uint64_t rad = ctx.order_radical();
  Factorization radf =
      rad == 1 ? Factorization{1, {}} : factorize(rad);
  auto sq_divs = radf.squarefree_divisors();
  for (const auto& [d1, mu1] : sq_divs) {
    for (const auto& [d2, mu2] : sq_divs) {
      for (const auto& chi1 : ctx.characters_of_order(d1)) {
        for (const auto& chi2 : ctx.characters_of_order(d2)) {
          auto s = char_sum(ctx, t, chi1, chi2);
          double mod = std::abs(s.value);
          if (d1 == 1 && d2 == 1) {
            report.max_principal = std::max(report.max_principal, mod);
            // Principal pair: S is a real count, bounded below by q-3.
            if (s.value.real() < static_cast<double>(ctx.q()) - 3.0 - 1e-6)
              report.violations.push_back(
                  {d1, chi1.j, d2, chi2.j, s.value,
                   static_cast<double>(ctx.q()) - 3.0, "principal >= q-3"});
          } else if (d1 > 1 && d2 == 1) {
            report.max_d1_only = std::max(report.max_d1_only, mod);
            if (mod > 2.0 + 1e-6)
              report.violations.push_back(
                  {d1, chi1.j, d2, chi2.j, s.value, 2.0, "|S| <= 2"});
          } else if (d1 == 1 && d2 > 1) {
            report.max_d2_only = std::max(report.max_d2_only, mod);
            if (mod > sq + 1.0 + 1e-6)
              report.violations.push_back(
                  {d1, chi1.j, d2, chi2.j, s.value, sq + 1.0, "|S| <= sqrt(q)+1"});
          } else {
            report.max_both = std::max(report.max_both, mod);
            if (mod > 2.0 * sq + 1e-6)
              report.violations.push_back(
                  {d1, chi1.j, d2, chi2.j, s.value, 2.0 * sq, "|S| <= 2 sqrt(q)"});
          }
        }
      }
    }
  }
  return report;
}

std::vector<Triple> sample_admissible_triples(const FieldCtx& ctx, size_t count,
                                              uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> dist(0, ctx.q() - 1);
  std::vector<Triple> out;
  out.reserve(count);
  while (out.size() < count) {
    Triple t{static_cast<FieldElem>(dist(rng)), static_cast<FieldElem>(dist(rng)),
             static_cast<FieldElem>(dist(rng))};
    if (ctx.admissible(t)) out.push_back(t);
  }
  return out;
}

}  // namespace qpr
