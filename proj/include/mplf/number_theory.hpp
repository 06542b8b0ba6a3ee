#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace mplf {

bool is_prime(long n);

/// Prime factorization as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<long, int>> factorize(long n);

/// Positive divisors in ascending order.
std::vector<long> divisors(long n);

/// a mod m in [0, m).
inline long mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

long powmod(long base, long exponent, long modulus);

/// Primitive root modulo the odd prime power p^e; for e = 1 it is the
/// smallest primitive root mod p.
long primitive_root_prime_power(long p, int e);

}  // namespace mplf
