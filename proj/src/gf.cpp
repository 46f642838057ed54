#include "qpr/gf.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qpr {

namespace {

constexpr double kTau = 6.283185307179586476925286766559;

// Dense polynomial helpers over F_p, little-endian coefficient vectors,
// used only during modulus construction.
using Poly = std::vector<uint64_t>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  size_t k = f.size() - 1;  // f monic of degree k
  for (size_t d = prod.size(); d-- > k;) {
    uint64_t t = prod[d];
    if (t == 0) continue;
    prod[d] = 0;
    for (size_t i = 0; i < k; ++i)
      prod[d - k + i] = (prod[d - k + i] + (p - f[i] % p) * t) % p;
  }
  prod.resize(k);
  poly_trim(prod);
  return prod;
}

Poly poly_powmod(Poly base, uint64_t e, const Poly& f, uint64_t p) {
  Poly result{1};
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

Poly poly_sub(Poly a, const Poly& b, uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  poly_trim(a);
  return a;
}

Poly poly_mod(Poly a, const Poly& b, uint64_t p) {
  // b need not be monic; normalize by the inverse of its leading coefficient.
  uint64_t lead = b.back();
  uint64_t inv_lead = 1;
  for (uint64_t e = p - 2, base = lead; e > 0; e >>= 1) {
    if (e & 1) inv_lead = inv_lead * base % p;
    base = base * base % p;
  }
  while (a.size() >= b.size()) {
    uint64_t t = a.back() * inv_lead % p;
    if (t != 0) {
      size_t off = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[off + i] = (a[off + i] + (p - b[i]) * t) % p;
    }
    a.pop_back();
    poly_trim(a);
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, uint64_t p) {
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

FieldCtx::FieldCtx(uint64_t q) : q_(q) {
  if (q < 2 || q > (uint64_t{1} << 25))
    throw std::domain_error("FieldCtx: q out of supported range");
  Factorization qf = qpr::factorize(q);
  if (qf.factors.size() != 1)
    throw std::domain_error("FieldCtx: q is not a prime power");
  p_ = qf.factors[0].p;
  k_ = qf.factors[0].k;
  if (q == 2) {
    q1f_.n = 1;  // q-1 = 1: empty factorization
  } else {
    q1f_ = qpr::factorize(q - 1);
  }
  radical_ = q1f_.radical();
  if (k_ == 1)
    build_prime_field();
  else
    build_extension_field();

  // Shared table wiring: logs, Zech logs, log(-1).
  log_.assign(q_, kNoLog);
  for (uint64_t n = 0; n < q_ - 1; ++n) log_[exp_[n]] = static_cast<uint32_t>(n);
  zech_.assign(q_ - 1, kNoLog);
  for (uint64_t n = 0; n < q_ - 1; ++n) {
    FieldElem s = add(exp_[n], 1);
    zech_[n] = (s == 0) ? kNoLog : log_[s];
  }
  m1log_ = (p_ == 2) ? 0 : static_cast<uint32_t>((q_ - 1) / 2);
}

void FieldCtx::build_prime_field() {
  // Generator: smallest residue whose order is exactly p-1.
  FieldElem g = 1;
  if (q_ > 2) {
    for (g = 2; g < q_; ++g) {
      bool ok = true;
      for (const auto& f : q1f_.factors) {
        if (pow_mod(g, (q_ - 1) / f.p, q_) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) break;
    }
  }
  generator_ = g;
  exp_.resize(q_ - 1);
  uint64_t v = 1;
  for (uint64_t n = 0; n < q_ - 1; ++n) {
    exp_[n] = static_cast<FieldElem>(v);
    v = v * g % q_;
  }
}

FieldElem FieldCtx::raw_mul(FieldElem a, FieldElem b,
                            const std::vector<uint32_t>& mod) const {
  // Schoolbook product of base-p digit vectors, reduced by the monic modulus.
  uint32_t da[32], db[32];
  uint64_t prod[64] = {0};
  uint32_t va = a, vb = b;
  for (uint32_t i = 0; i < k_; ++i) {
    da[i] = va % p_;
    va /= static_cast<uint32_t>(p_);
    db[i] = vb % p_;
    vb /= static_cast<uint32_t>(p_);
  }
  for (uint32_t i = 0; i < k_; ++i) {
    if (da[i] == 0) continue;
    for (uint32_t j = 0; j < k_; ++j) prod[i + j] += uint64_t{da[i]} * db[j];
  }
  for (uint32_t d = 2 * k_ - 2; d >= k_; --d) {
    uint64_t t = prod[d] % p_;
    if (t != 0) {
      for (uint32_t i = 0; i < k_; ++i)
        prod[d - k_ + i] += t * (p_ - mod[i]);
    }
    if (d == k_) break;
  }
  FieldElem out = 0;
  for (uint32_t i = k_; i-- > 0;)
    out = static_cast<FieldElem>(out * p_ + prod[i] % p_);
  return out;
}

bool FieldCtx::poly_irreducible(const std::vector<uint32_t>& coeffs) const {
  Poly f(k_ + 1);
  for (uint32_t i = 0; i < k_; ++i) f[i] = coeffs[i];
  f[k_] = 1;
  if (k_ <= 3) {
    // Degree 2 or 3: irreducible iff no roots in F_p.
    for (uint64_t x = 0; x < p_; ++x) {
      uint64_t acc = 0;
      for (uint32_t i = k_ + 1; i-- > 0;) acc = (acc * x + f[i]) % p_;
      if (acc == 0) return false;
    }
    return true;
  }
  // Rabin: x^{p^k} == x (mod f), and gcd(x^{p^{k/r}} - x, f) = 1 for every
  // prime r | k.
  Poly x{0, 1};
  uint64_t pk = 1;
  for (uint32_t i = 0; i < k_; ++i) pk *= p_;
  Poly frob = poly_powmod(x, pk, f, p_);
  if (poly_sub(frob, x, p_) != Poly{}) return false;
  Factorization kf = qpr::factorize(k_);
  for (const auto& r : kf.factors) {
    uint64_t pm = 1;
    for (uint32_t i = 0; i < k_ / r.p; ++i) pm *= p_;
    Poly g = poly_sub(poly_powmod(x, pm, f, p_), x, p_);
    Poly d = poly_gcd(f, g, p_);
    if (!(d.size() == 1)) return false;
  }
  return true;
}

void FieldCtx::build_extension_field() {
  // Smallest monic irreducible of degree k, comparing the k non-leading
  // coefficients as a base-p integer (low degree = least significant digit).
  modulus_.assign(k_, 0);
  uint64_t enc = 1;
  for (;; ++enc) {
    uint64_t v = enc;
    for (uint32_t i = 0; i < k_; ++i) {
      modulus_[i] = static_cast<uint32_t>(v % p_);
      v /= p_;
    }
    if (poly_irreducible(modulus_)) break;
  }

  // Generator: smallest encoding with multiplicative order exactly q-1.
  auto pow_raw = [&](FieldElem base, uint64_t e) {
    FieldElem result = 1;
    while (e > 0) {
      if (e & 1) result = raw_mul(result, base, modulus_);
      base = raw_mul(base, base, modulus_);
      e >>= 1;
    }
    return result;
  };
  for (FieldElem g = 2;; ++g) {
    bool ok = true;
    for (const auto& f : q1f_.factors) {
      if (pow_raw(g, (q_ - 1) / f.p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      generator_ = g;
      break;
    }
  }
  exp_.resize(q_ - 1);
  FieldElem v = 1;
  for (uint64_t n = 0; n < q_ - 1; ++n) {
    exp_[n] = v;
    v = raw_mul(v, generator_, modulus_);
  }
}

FieldElem FieldCtx::add(FieldElem a, FieldElem b) const {
  if (k_ == 1) {
    uint64_t s = uint64_t{a} + b;
    if (s >= q_) s -= q_;
    return static_cast<FieldElem>(s);
  }
  FieldElem out = 0;
  uint32_t mul = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    uint32_t da = a % p_, db = b % p_;
    a /= static_cast<uint32_t>(p_);
    b /= static_cast<uint32_t>(p_);
    uint32_t s = da + db;
    if (s >= p_) s -= static_cast<uint32_t>(p_);
    out += s * mul;
    mul *= static_cast<uint32_t>(p_);
  }
  return out;
}

FieldElem FieldCtx::neg(FieldElem a) const {
  if (k_ == 1) return a == 0 ? 0 : static_cast<FieldElem>(q_ - a);
  FieldElem out = 0;
  uint32_t mul = 1;
  for (uint32_t i = 0; i < k_; ++i) {
    uint32_t d = a % p_;
    a /= static_cast<uint32_t>(p_);
    out += (d == 0 ? 0 : static_cast<uint32_t>(p_) - d) * mul;
    mul *= static_cast<uint32_t>(p_);
  }
  return out;
}

FieldElem FieldCtx::sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

FieldElem FieldCtx::mul(FieldElem a, FieldElem b) const {
  if (a == 0 || b == 0) return 0;
  uint64_t n = uint64_t{log_[a]} + log_[b];
  if (n >= q_ - 1) n -= q_ - 1;
  return exp_[n];
}

FieldElem FieldCtx::inv(FieldElem a) const {
  if (a == 0) throw std::domain_error("FieldCtx::inv: zero element");
  uint32_t l = log_[a];
  return exp_[l == 0 ? 0 : q_ - 1 - l];
}

FieldElem FieldCtx::pow_elem(FieldElem a, uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  uint64_t l = log_[a];
  return exp_[(l * (e % (q_ - 1))) % (q_ - 1)];
}

FieldElem FieldCtx::eval_quadratic(const Triple& t, FieldElem g) const {
  return add(add(mul(t.a, mul(g, g)), mul(t.b, g)), t.c);
}

bool FieldCtx::admissible(const Triple& t) const {
  if (t.a == 0) return false;
  FieldElem four = add(add(1, 1), add(1, 1));
  FieldElem disc = sub(mul(t.b, t.b), mul(four, mul(t.a, t.c)));
  return disc != 0;
}

bool FieldCtx::is_e_free(FieldElem g, uint64_t e) const {
  if (g == 0) return false;
  uint64_t rad = 1;
  for (const auto& f : q1f_.factors)
    if (e % f.p == 0) rad *= f.p;
  return std::gcd(static_cast<uint64_t>(log_[g]), rad) == 1;
}

Character FieldCtx::character(uint64_t d, uint64_t j) const {
  if (d == 0 || (q_ - 1) % d != 0)
    throw std::domain_error("FieldCtx::character: order does not divide q-1");
  if (std::gcd(j % d == 0 ? d : j % d, d) != 1 && d != 1)
    throw std::domain_error("FieldCtx::character: index not coprime to order");
  Character chi;
  chi.d = d;
  chi.j = d == 1 ? 1 : j % d;
  chi.t = chi.j * ((q_ - 1) / d);
  return chi;
}

std::vector<Character> FieldCtx::characters_of_order(uint64_t d) const {
  std::vector<Character> out;
  for (uint64_t j = 1; j <= d; ++j) {
    if (std::gcd(j, d) == 1) out.push_back(character(d, j));
    if (d == 1) break;
  }
  return out;
}

const std::vector<std::complex<double>>& FieldCtx::unity_roots() const {
  if (roots_.empty()) {
    roots_.resize(q_ - 1);
    for (uint64_t n = 0; n < q_ - 1; ++n) {
      double ang = kTau * static_cast<double>(n) / static_cast<double>(q_ - 1);
      roots_[n] = {std::cos(ang), std::sin(ang)};
    }
  }
  return roots_;
}

std::complex<double> FieldCtx::char_value(const Character& chi, FieldElem g) const {
  if (g == 0) return {0.0, 0.0};
  const auto& roots = unity_roots();
  uint64_t n = (chi.t % (q_ - 1)) * log_[g] % (q_ - 1);
  return roots[n];
}

}  // namespace qpr
