#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "qpr/gf.hpp"

using namespace qpr;

namespace {

// Every structural law the tables must satisfy, checked on all elements.
void check_field_laws(const FieldCtx& f) {
  const uint64_t q = f.q();
  const uint64_t q1 = q - 1;

  // exp/log are inverse bijections between [0, q-1) and nonzero elements.
  std::set<FieldElem> seen;
  for (uint64_t n = 0; n < q1; ++n) {
    FieldElem g = f.exp(n);
    CHECK(g != 0);
    CHECK(f.log(g) == n);
    seen.insert(g);
  }
  CHECK(seen.size() == q1);
  CHECK(f.log(0) == FieldCtx::kNoLog);

  // Additive and multiplicative laws on every pair.
  for (uint64_t a = 0; a < q; ++a) {
    CHECK(f.add(static_cast<FieldElem>(a), f.neg(static_cast<FieldElem>(a))) == 0);
    CHECK(f.mul(static_cast<FieldElem>(a), 1) == a);
    if (a != 0) {
      CHECK(f.mul(static_cast<FieldElem>(a), f.inv(static_cast<FieldElem>(a))) == 1);
    }
    for (uint64_t b = 0; b < q; ++b) {
      FieldElem x = static_cast<FieldElem>(a), y = static_cast<FieldElem>(b);
      CHECK(f.add(x, y) == f.add(y, x));
      CHECK(f.mul(x, y) == f.mul(y, x));
      CHECK(f.sub(f.add(x, y), y) == x);
      // log is a homomorphism.
      if (a != 0 && b != 0) {
        uint64_t expected = (static_cast<uint64_t>(f.log(x)) + f.log(y)) % q1;
        CHECK(f.log(f.mul(x, y)) == expected);
      }
    }
  }

  // zech(n) = log(gamma^n + 1); the sentinel marks gamma^n = -1.
  for (uint64_t n = 0; n < q1; ++n) {
    FieldElem v = f.add(f.exp(n), 1);
    if (v == 0) {
      CHECK(f.zech(n) == FieldCtx::kNoLog);
      CHECK(n == f.minus_one_log());
    } else {
      CHECK(f.zech(n) == f.log(v));
    }
  }
  CHECK(f.exp(f.minus_one_log()) == f.neg(1));

  // Frobenius: the p-power map is additive.
  for (uint64_t a = 0; a < q; ++a)
    for (uint64_t b = 0; b < q; ++b) {
      FieldElem x = static_cast<FieldElem>(a), y = static_cast<FieldElem>(b);
      CHECK(f.pow_elem(f.add(x, y), f.p()) ==
            f.add(f.pow_elem(x, f.p()), f.pow_elem(y, f.p())));
    }
}

}  // namespace

TEST_CASE("prime fields match modular arithmetic") {
  FieldCtx f(7);
  CHECK(f.generator() == 3);
  for (uint64_t a = 0; a < 7; ++a)
    for (uint64_t b = 0; b < 7; ++b) {
      CHECK(f.add(a, b) == (a + b) % 7);
      CHECK(f.mul(a, b) == (a * b) % 7);
    }
  std::vector<FieldElem> prims;
  for (FieldElem g = 1; g < 7; ++g)
    if (f.is_primitive(g)) prims.push_back(g);
  CHECK(prims == std::vector<FieldElem>{3, 5});
  check_field_laws(f);
}

TEST_CASE("deterministic modulus and generator choices") {
  // (q, encoded non-leading coefficients of the modulus, generator)
  struct Expect { uint64_t q, mod_enc, gen; };
  const Expect table[] = {{4, 3, 2},  {8, 3, 2},  {9, 1, 4},  {16, 3, 2},
                          {25, 2, 6}, {27, 7, 3}, {49, 1, 9}};
  for (const Expect& e : table) {
    FieldCtx f(e.q);
    uint64_t enc = 0;
    uint64_t scale = 1;
    for (uint32_t c : f.modulus_coeffs()) {
      enc += c * scale;
      scale *= f.p();
    }
    CHECK(enc == e.mod_enc);
    CHECK(f.generator() == e.gen);
  }
}

TEST_CASE("field laws hold across small prime powers") {
  for (uint64_t q : {2, 3, 4, 5, 8, 9, 11, 16, 25, 27, 32, 49, 81, 121, 128}) {
    CAPTURE(q);
    check_field_laws(FieldCtx(q));
  }
}

TEST_CASE("the trivial field q=2") {
  FieldCtx f(2);
  CHECK(f.generator() == 1);
  CHECK(f.order() == 1);
  CHECK(f.order_radical() == 1);
  CHECK(f.is_primitive(1));
  CHECK(f.minus_one_log() == 0);  // -1 = 1
  CHECK(f.admissible(Triple{1, 1, 0}));
  // In characteristic 2 the discriminant degenerates to b^2, so b = 0 is out.
  CHECK_FALSE(f.admissible(Triple{1, 0, 1}));
}

TEST_CASE("admissibility and quadratic evaluation") {
  FieldCtx f(13);
  CHECK_FALSE(f.admissible(Triple{0, 1, 1}));   // a = 0
  CHECK_FALSE(f.admissible(Triple{1, 4, 4}));   // (x+2)^2: disc = 0
  CHECK(f.admissible(Triple{1, 0, 12}));        // x^2 - 1
  for (uint64_t g = 0; g < 13; ++g) {
    CHECK(f.eval_quadratic(Triple{2, 5, 11}, g) == (2 * g * g + 5 * g + 11) % 13);
  }
  // Extension field: evaluate through explicit mul/add.
  FieldCtx f9(9);
  Triple t{4, 7, 2};
  for (uint64_t g = 0; g < 9; ++g) {
    FieldElem expected =
        f9.add(f9.add(f9.mul(4, f9.mul(g, g)), f9.mul(7, g)), 2);
    CHECK(f9.eval_quadratic(t, g) == expected);
  }
}

TEST_CASE("e-free structure") {
  FieldCtx f(13);  // q-1 = 12 = 2^2 * 3
  // g is e-free iff gcd(log g, rad(e)) = 1; for e = q-1 that is primitivity.
  int prim_count = 0;
  for (FieldElem g = 1; g < 13; ++g) prim_count += f.is_primitive(g);
  CHECK(prim_count == 4);  // phi(12)
  // 2-free = not a square among nonzero.
  int sq_free = 0;
  for (FieldElem g = 1; g < 13; ++g) sq_free += f.is_e_free(g, 2);
  CHECK(sq_free == 6);
  // e and rad(e) induce the same filter.
  for (FieldElem g = 1; g < 13; ++g)
    CHECK(f.is_e_free(g, 12) == f.is_e_free(g, 6));
  CHECK_FALSE(f.is_e_free(0, 2));
  // Every nonzero element is 1-free.
  for (FieldElem g = 1; g < 13; ++g) CHECK(f.is_e_free(g, 1));
}

TEST_CASE("characters: construction, values, orthogonality") {
  FieldCtx f(25);
  CHECK_THROWS_AS(f.character(7, 1), std::domain_error);   // 7 does not divide 24
  CHECK_THROWS_AS(f.character(4, 2), std::domain_error);   // gcd(j, d) != 1
  Character chi = f.character(4, 1);
  CHECK(chi.t == 6);  // j (q-1)/d

  CHECK(f.characters_of_order(1).size() == 1);
  CHECK(f.characters_of_order(4).size() == 2);   // phi(4)
  CHECK(f.characters_of_order(24).size() == 8);  // phi(24)

  // chi(0) = 0 for every character, including the principal one.
  for (uint64_t d : {1, 2, 3, 4, 6, 8, 12, 24})
    for (const Character& c : f.characters_of_order(d))
      CHECK(std::abs(f.char_value(c, 0)) == 0.0);

  // Orthogonality: sum over the group vanishes for non-principal characters
  // and counts the group for the principal one.
  for (uint64_t d : {1, 2, 3, 8, 24}) {
    for (const Character& c : f.characters_of_order(d)) {
      std::complex<double> sum = 0;
      for (uint64_t n = 0; n < 24; ++n) sum += f.char_value(c, f.exp(n));
      if (d == 1) {
        CHECK(sum.real() == doctest::Approx(24.0));
      } else {
        CHECK(std::abs(sum) < 1e-9);
      }
    }
  }

  // Multiplicativity on a sample of pairs.
  Character c8 = f.character(8, 3);
  for (uint64_t i = 0; i < 24; i += 5)
    for (uint64_t j = 0; j < 24; j += 7) {
      FieldElem x = f.exp(i), y = f.exp(j);
      std::complex<double> lhs = f.char_value(c8, f.mul(x, y));
      std::complex<double> rhs = f.char_value(c8, x) * f.char_value(c8, y);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("construction rejects non prime powers and oversized q") {
  CHECK_THROWS_AS(FieldCtx(1), std::domain_error);
  CHECK_THROWS_AS(FieldCtx(12), std::domain_error);
  CHECK_THROWS_AS(FieldCtx(100), std::domain_error);
  CHECK_THROWS_AS(FieldCtx(uint64_t{1} << 26), std::domain_error);
}

TEST_CASE("medium extension field sanity: GF(729)") {
  FieldCtx f(729);
  CHECK(f.p() == 3);
  CHECK(f.k() == 6);
  // Generator order is exactly q-1.
  CHECK(f.exp(728 / 2) != 1);
  CHECK(f.pow_elem(f.generator(), 728) == 1);
  for (uint64_t m : {2, 7, 13}) CHECK(f.pow_elem(f.generator(), 728 / m) != 1);
  // Sampled log homomorphism checks.
  for (uint64_t n = 1; n < 728; n += 37) {
    FieldElem g = f.exp(n);
    CHECK(f.log(f.mul(g, g)) == (2 * n) % 728);
  }
}
