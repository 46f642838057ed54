#include "qpr/checker.hpp"

#include <chrono>
#include <numeric>
#include <vector>

namespace qpr {

CheckReport check_q(const FieldCtx& ctx) {
  auto t0 = std::chrono::steady_clock::now();
  CheckReport report;
  const uint64_t q = ctx.q();
  const uint64_t q1 = q - 1;
  const uint64_t R = ctx.order_radical();
  report.q = q;

  // Primitive exponents: n in [0, q-1) with gcd(n, R) = 1. For q = 2 the
  // radical is 1 and n = 0 (the element 1) qualifies.
  std::vector<uint32_t> prim_exps;
  for (uint64_t n = 0; n < q1; ++n)
    if (std::gcd(n, R) == 1) prim_exps.push_back(static_cast<uint32_t>(n));

  // gcd(x, R) = 1 lookup over residues mod R.
  std::vector<uint8_t> coprime(R);
  for (uint64_t x = 0; x < R; ++x) coprime[x] = std::gcd(x, R) == 1 ? 1 : 0;

  // Element iteration order: generator powers, then zero.
  std::vector<FieldElem> elems(q);
  for (uint64_t n = 0; n < q1; ++n) elems[n] = ctx.exp(n);
  elems[q1] = 0;

  // Logs of g^2 + bg + c seen so far for the current (b, c), reduced mod R
  // (the success test only depends on the residue).
  std::vector<uint32_t> stored;
  stored.reserve(prim_exps.size());

  for (uint64_t ci = 0; ci < q; ++ci) {
    FieldElem c = elems[ci];
    for (uint64_t bi = 0; bi < q; ++bi) {
      FieldElem b = elems[bi];
      // Normalized discriminant: b^2 - 4c.
      FieldElem four = ctx.add(ctx.add(1, 1), ctx.add(1, 1));
      if (ctx.sub(ctx.mul(b, b), ctx.mul(four, c)) == 0) continue;

      stored.clear();
      size_t cursor = 0;  // next unconsumed primitive exponent
      for (uint64_t j = 0; j < R; ++j) {
        ++report.triples_examined;
        bool ok = false;
        for (uint32_t lr : stored) {
          uint64_t x = j + lr;
          if (x >= R) x -= R;
          if (coprime[x]) {
            ok = true;
            break;
          }
        }
        while (!ok && cursor < prim_exps.size()) {
          FieldElem g = ctx.exp(prim_exps[cursor]);
          ++cursor;
          FieldElem v = ctx.add(ctx.add(ctx.mul(g, g), ctx.mul(b, g)), c);
          if (v == 0) continue;  // no logarithm; never primitive
          uint32_t lr = static_cast<uint32_t>(ctx.log(v) % R);
          stored.push_back(lr);
          uint64_t x = j + lr;
          if (x >= R) x -= R;
          if (coprime[x]) ok = true;
        }
        if (!ok) {
          FieldElem a = ctx.exp(j);
          report.verified = false;
          report.witness = {a, ctx.mul(a, b), ctx.mul(a, c)};
          report.elapsed_seconds =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                  .count();
          return report;
        }
      }
    }
  }
  report.verified = true;
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

bool naive_oracle(const FieldCtx& ctx, const Triple& t) {
  const uint64_t q1 = ctx.order();
  for (uint64_t n = 0; n < q1; ++n) {
    FieldElem g = ctx.exp(n);
    if (!ctx.is_primitive(g)) continue;
    FieldElem v = ctx.eval_quadratic(t, g);
    if (v != 0 && ctx.is_primitive(v)) return true;
  }
  return false;
}

CheckReport naive_check_q(const FieldCtx& ctx) {
  const auto start = std::chrono::steady_clock::now();
  const uint64_t q = ctx.q();
  CheckReport report;
  report.q = q;
  report.verified = true;

  for (uint64_t a = 1; a < q && report.verified; ++a) {
    for (uint64_t b = 0; b < q && report.verified; ++b) {
      for (uint64_t c = 0; c < q; ++c) {
        Triple t{static_cast<FieldElem>(a), static_cast<FieldElem>(b),
                 static_cast<FieldElem>(c)};
        if (!ctx.admissible(t)) continue;
        ++report.triples_examined;
        if (!naive_oracle(ctx, t)) {
          report.verified = false;
          report.witness = t;
          break;
        }
      }
    }
  }

  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace qpr
