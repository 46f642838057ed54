#include "qpr/numtheory.hpp"

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace qpr {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rat128::Rat128(__int128 n, __int128 d) : num_(n), den_(d) {
  if (den_ == 0) throw std::domain_error("Rat128: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  __int128 g = gcd128(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rat128 Rat128::operator+(const Rat128& o) const {
  return Rat128(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rat128 Rat128::operator-(const Rat128& o) const {
  return Rat128(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rat128 Rat128::operator*(const Rat128& o) const {
  return Rat128(num_ * o.num_, den_ * o.den_);
}

bool Rat128::operator<(const Rat128& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

double Rat128::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

namespace {

std::string i128_str(__int128 v) {
  if (v == 0) return std::string("0");
  bool neg = v < 0;
  if (neg) v = -v;
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace

std::string Rat128::str() const {
  if (den_ == 1) return i128_str(num_);
  return i128_str(num_) + "/" + i128_str(den_);
}

std::string Rat128::num_str() const { return i128_str(num_); }
std::string Rat128::den_str() const { return i128_str(den_); }

uint64_t Factorization::radical() const {
  uint64_t r = 1;
  for (const auto& f : factors) r *= f.p;
  return r;
}

uint64_t Factorization::phi() const {
  uint64_t result = 1;
  for (const auto& f : factors) {
    uint64_t pk1 = 1;
    for (uint32_t i = 1; i < f.k; ++i) pk1 *= f.p;
    result *= pk1 * (f.p - 1);
  }
  return result;
}

Rat128 Factorization::theta() const {
  Rat128 t(1);
  for (const auto& f : factors)
    t = t * Rat128(static_cast<__int128>(f.p - 1), static_cast<__int128>(f.p));
  return t;
}

std::vector<uint64_t> Factorization::primes() const {
  std::vector<uint64_t> ps;
  ps.reserve(factors.size());
  for (const auto& f : factors) ps.push_back(f.p);
  return ps;
}

std::vector<uint64_t> Factorization::divisors() const {
  std::vector<uint64_t> divs{1};
  for (const auto& f : factors) {
    size_t base = divs.size();
    uint64_t pk = 1;
    for (uint32_t i = 0; i < f.k; ++i) {
      pk *= f.p;
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<std::pair<uint64_t, int>> Factorization::squarefree_divisors() const {
  std::vector<std::pair<uint64_t, int>> divs{{1, 1}};
  for (const auto& f : factors) {
    size_t base = divs.size();
    for (size_t j = 0; j < base; ++j)
      divs.emplace_back(divs[j].first * f.p, -divs[j].second);
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // This witness set is deterministic for all n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

uint64_t brent_rho(uint64_t n) {
  if ((n & 1) == 0) return 2;
  // Deterministic parameter schedule: increment the additive constant until a
  // proper factor emerges. Every composite below 2^63 falls to some c.
  for (uint64_t c = 1;; ++c) {
    uint64_t x = 2, y = 2, d = 1;
    uint64_t power = 1, lam = 1;
    while (d == 1) {
      if (power == lam) {
        x = y;
        power <<= 1;
        lam = 0;
      }
      y = (mul_mod(y, y, n) + c) % n;
      ++lam;
      uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = brent_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

Factorization factorize(uint64_t n) {
  if (n < 2) throw std::domain_error("factorize: n must be >= 2");
  Factorization f;
  f.n = n;
  std::vector<uint64_t> primes;
  uint64_t rest = n;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                     29ull, 31ull, 37ull, 41ull, 43ull, 47ull}) {
    while (rest % p == 0) {
      primes.push_back(p);
      rest /= p;
    }
  }
  if (rest > 1) factor_rec(rest, primes);
  std::sort(primes.begin(), primes.end());
  for (uint64_t p : primes) {
    if (!f.factors.empty() && f.factors.back().p == p)
      ++f.factors.back().k;
    else
      f.factors.push_back({p, 1});
  }
  return f;
}

SpfTable::SpfTable(uint64_t bound) : bound_(bound) {
  if (bound > (uint64_t{1} << 32))
    throw std::domain_error("SpfTable: bound exceeds 2^32");
  table_.assign(bound + 1, 0);
  std::vector<uint32_t> primes;
  // Linear sieve: each integer is struck exactly once, by its smallest prime.
  for (uint64_t i = 2; i <= bound; ++i) {
    if (table_[i] == 0) {
      table_[i] = static_cast<uint32_t>(i);
      primes.push_back(static_cast<uint32_t>(i));
    }
    for (uint32_t p : primes) {
      if (p > table_[i] || i * p > bound) break;
      table_[i * p] = p;
    }
  }
}

namespace {
constexpr char kSpfMagic[8] = {'Q', 'P', 'R', 'S', 'P', 'F', '0', '1'};
}

void SpfTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("SpfTable::save: cannot open " + path);
  out.write(kSpfMagic, 8);
  uint64_t b = bound_;
  out.write(reinterpret_cast<const char*>(&b), 8);
  out.write(reinterpret_cast<const char*>(table_.data()),
            static_cast<std::streamsize>(table_.size() * sizeof(uint32_t)));
  if (!out) throw std::runtime_error("SpfTable::save: write failed for " + path);
}

SpfTable SpfTable::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("SpfTable::load: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (!in || std::memcmp(magic, kSpfMagic, 8) != 0)
    throw std::runtime_error("SpfTable::load: bad magic in " + path);
  uint64_t b = 0;
  in.read(reinterpret_cast<char*>(&b), 8);
  if (!in) throw std::runtime_error("SpfTable::load: truncated header in " + path);
  SpfTable t;
  t.bound_ = b;
  t.table_.resize(b + 1);
  in.read(reinterpret_cast<char*>(t.table_.data()),
          static_cast<std::streamsize>(t.table_.size() * sizeof(uint32_t)));
  if (!in) throw std::runtime_error("SpfTable::load: truncated table in " + path);
  return t;
}

Factorization SpfTable::factorize(uint64_t n) const {
  if (n < 2) throw std::domain_error("SpfTable::factorize: n must be >= 2");
  if (n > bound_) throw std::domain_error("SpfTable::factorize: n beyond bound");
  Factorization f;
  f.n = n;
  while (n > 1) {
    uint32_t p = table_[n];
    uint32_t k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    f.factors.push_back({p, k});
  }
  return f;
}

std::vector<PrimePower> enumerate_prime_powers(uint64_t bound, int omega_target,
                                               const SpfTable& spf) {
  std::vector<PrimePower> out;
  if (bound < 2) return out;
  if (bound > spf.bound())
    throw std::domain_error("enumerate_prime_powers: sieve does not cover bound");
  auto omega_of = [&](uint64_t m) {
    int om = 0;
    while (m > 1) {
      uint32_t p = spf.spf(m);
      ++om;
      while (m % p == 0) m /= p;
    }
    return om;
  };
  if (omega_target == 0) {
    // q - 1 = 1 only for q = 2.
    out.push_back({2, 2, 1});
    return out;
  }
  for (uint64_t q = 3; q <= bound; ++q) {
    if (spf.spf(q) == q && omega_of(q - 1) == omega_target)
      out.push_back({q, q, 1});
  }
  // Proper prime powers p^k, k >= 2.
  for (uint64_t p = 2; p * p <= bound; ++p) {
    if (spf.spf(p) != p) continue;
    uint64_t q = p * p;
    uint32_t k = 2;
    while (q <= bound) {
      if (omega_of(q - 1) == omega_target) out.push_back({q, p, k});
      if (q > bound / p) break;
      q *= p;
      ++k;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.q < b.q; });
  return out;
}

uint64_t primorial(int k) {
  uint64_t result = 1;
  uint64_t p = 2;
  for (int i = 0; i < k; ++i) {
    result *= p;
    do { ++p; } while (!is_prime_u64(p));
  }
  return result;
}

}  // namespace qpr
