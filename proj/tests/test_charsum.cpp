#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qpr/charsum.hpp"

using namespace qpr;

TEST_CASE("principal pair counts nonvanishing arguments") {
  FieldCtx f(7);
  Triple t{1, 1, 1};  // x^2 + x + 1 vanishes at 2 and 4 over F_7
  CharSumValue s = char_sum(f, t, f.character(1, 1), f.character(1, 1));
  CHECK(s.value.real() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(s.value.imag()) < 1e-12);
}

TEST_CASE("char_sum rejects inadmissible input") {
  FieldCtx f(7);
  CHECK_THROWS_AS(
      char_sum(f, Triple{0, 1, 1}, f.character(1, 1), f.character(1, 1)),
      std::domain_error);
}

TEST_CASE("degenerate expansion: q=7, e1=e2=1") {
  FieldCtx f(7);
  Triple t{1, 1, 1};
  REQUIRE(f.admissible(t));
  // With e1 = e2 = 1 both theta factors are 1 and the expansion collapses
  // to the single principal term.
  CountResult via = count_via_characters(f, t, 1, 1);
  CountResult direct = count_free_pairs(f, t, 1, 1);
  CHECK(via.N == direct.N);
  CharSumValue s = char_sum(f, t, f.character(1, 1), f.character(1, 1));
  CHECK(static_cast<double>(via.N) == doctest::Approx(s.value.real()));
}

TEST_CASE("expansion equals enumeration across fields and divisor pairs") {
  for (uint64_t q : {7, 9, 11, 13, 16, 25, 27}) {
    CAPTURE(q);
    FieldCtx f(q);
    Factorization q1f = factorize(q - 1);
    std::vector<uint64_t> divisors = q1f.divisors();
    for (const Triple& t : sample_admissible_triples(f, 4, /*seed=*/q)) {
      for (uint64_t e1 : divisors) {
        for (uint64_t e2 : divisors) {
          CountResult direct = count_free_pairs(f, t, e1, e2);
          CountResult via = count_via_characters(f, t, e1, e2);
          CAPTURE(e1);
          CAPTURE(e2);
          CHECK(direct.N == via.N);
          CHECK(via.residual < 1e-6);
        }
      }
    }
  }
}

TEST_CASE("q=9 spot value from the expansion") {
  FieldCtx f(9);
  for (const Triple& t : sample_admissible_triples(f, 6, 99)) {
    CHECK(count_via_characters(f, t, 8, 2).N == count_free_pairs(f, t, 8, 2).N);
  }
}

TEST_CASE("weil bounds hold for sampled quadratics") {
  for (uint64_t q : {7, 11, 13, 25, 49, 61}) {
    CAPTURE(q);
    FieldCtx f(q);
    for (const Triple& t : sample_admissible_triples(f, 8, 7)) {
      WeilAuditReport rep = weil_audit(f, t);
      CHECK(rep.passed());
      CHECK(rep.max_principal >= static_cast<double>(q) - 3.0 - 1e-9);
      CHECK(rep.max_d1_only <= 2.0 + 1e-6);
      CHECK(rep.max_d2_only <= std::sqrt(static_cast<double>(q)) + 1.0 + 1e-6);
      CHECK(rep.max_both <= 2.0 * std::sqrt(static_cast<double>(q)) + 1e-6);
    }
  }
}

TEST_CASE("specific bound class: q=11, x^2+1, quadratic character") {
  FieldCtx f(11);
  Triple t{1, 0, 1};
  REQUIRE(f.admissible(t));
  // d1 = 2, d2 = 1 sits in the |S| <= 2 class.
  CharSumValue s = char_sum(f, t, f.character(2, 1), f.character(1, 1));
  CHECK(std::abs(s.value) <= 2.0 + 1e-9);
}

TEST_CASE("q=2 audit is vacuous") {
  FieldCtx f(2);
  WeilAuditReport rep = weil_audit(f, Triple{1, 1, 0});
  CHECK(rep.passed());
  CHECK(rep.max_d1_only == 0.0);
  CHECK(rep.max_both == 0.0);
}

TEST_CASE("sampler yields admissible, seed-stable triples") {
  FieldCtx f(49);
  std::vector<Triple> a = sample_admissible_triples(f, 20, 42);
  std::vector<Triple> b = sample_admissible_triples(f, 20, 42);
  std::vector<Triple> c = sample_admissible_triples(f, 20, 43);
  REQUIRE(a.size() == 20);
  bool same = true, diff = false;
  for (size_t i = 0; i < 20; ++i) {
    CHECK(f.admissible(a[i]));
    same = same && a[i].a == b[i].a && a[i].b == b[i].b && a[i].c == b[i].c;
    diff = diff || a[i].a != c[i].a || a[i].b != c[i].b || a[i].c != c[i].c;
  }
  CHECK(same);
  CHECK(diff);
}

TEST_CASE("counts are bounded by q-1") {
  FieldCtx f(27);
  for (const Triple& t : sample_admissible_triples(f, 5, 5)) {
    for (uint64_t e : {1, 2, 13, 26}) {
      CHECK(count_free_pairs(f, t, e, e).N <= 26);
    }
  }
}
