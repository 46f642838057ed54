#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qpr {

// Exact rational with 128-bit numerator/denominator, always normalized
// (gcd 1, denominator > 0). Large enough for every delta/epsilon/theta
// product that the sieve criteria form: denominators stay below the
// primorial of the participating primes, well under 2^127.
class Rat128 {
 public:
  Rat128() : num_(0), den_(1) {}
  Rat128(long long n) : num_(n), den_(1) {}
  Rat128(__int128 n, __int128 d);

  static Rat128 from_ratio(long long n, long long d) { return Rat128(n, d); }

  Rat128 operator+(const Rat128& o) const;
  Rat128 operator-(const Rat128& o) const;
  Rat128 operator*(const Rat128& o) const;
  bool operator<(const Rat128& o) const;
  bool operator>(const Rat128& o) const { return o < *this; }
  bool operator<=(const Rat128& o) const { return !(o < *this); }
  bool operator>=(const Rat128& o) const { return !(*this < o); }
  bool operator==(const Rat128& o) const { return num_ == o.num_ && den_ == o.den_; }

  bool positive() const { return num_ > 0; }
  bool negative() const { return num_ < 0; }
  double to_double() const;
  __int128 num() const { return num_; }
  __int128 den() const { return den_; }
  std::string str() const;
  // Decimal forms of the parts, for handing to wider numeric types.
  std::string num_str() const;
  std::string den_str() const;

 private:
  __int128 num_;
  __int128 den_;
};

struct Factor {
  uint64_t p;
  uint32_t k;
  bool operator==(const Factor& o) const { return p == o.p && k == o.k; }
};

// Ordered prime-power decomposition with the derived arithmetic functions
// used throughout the sieve criteria.
struct Factorization {
  uint64_t n = 0;
  std::vector<Factor> factors;  // ascending by prime

  int omega() const { return static_cast<int>(factors.size()); }
  uint64_t W() const { return uint64_t{1} << factors.size(); }
  uint64_t radical() const;
  uint64_t phi() const;
  Rat128 theta() const;  // prod (1 - 1/p)
  std::vector<uint64_t> primes() const;
  // All divisors, ascending (count kept modest by callers; q-1 < 2^25 here).
  std::vector<uint64_t> divisors() const;
  // Squarefree divisors with their Mobius value, ascending.
  std::vector<std::pair<uint64_t, int>> squarefree_divisors() const;
};

struct PrimePower {
  uint64_t q = 0;
  uint64_t p = 0;
  uint32_t k = 0;
};

bool is_prime_u64(uint64_t n);

// Deterministic factorization for n < 2^63 (trial division + Brent rho with
// Miller-Rabin primality certificates). Throws std::domain_error for n < 2.
Factorization factorize(uint64_t n);

// Smallest-prime-factor table over [0, bound]; entries 0 and 1 hold 0.
class SpfTable {
 public:
  explicit SpfTable(uint64_t bound);       // sieve construction
  static SpfTable load(const std::string& path);  // throws std::runtime_error
  void save(const std::string& path) const;

  uint64_t bound() const { return bound_; }
  uint32_t spf(uint64_t n) const { return table_[n]; }
  bool is_prime(uint64_t n) const { return n >= 2 && table_[n] == n; }
  Factorization factorize(uint64_t n) const;

 private:
  SpfTable() = default;
  uint64_t bound_ = 0;
  std::vector<uint32_t> table_;
};

// All prime powers q <= bound (q >= 2, any exponent k >= 1) with
// omega(q-1) == omega_target, ascending.
std::vector<PrimePower> enumerate_prime_powers(uint64_t bound, int omega_target,
                                               const SpfTable& spf);

// Product of the first k primes; seeds enumeration bounds (the smallest n
// with k distinct prime factors). Throws when the product would overflow.
uint64_t primorial(int k);

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m);
uint64_t pow_mod(uint64_t base, uint64_t exp, uint64_t m);

}  // namespace qpr
