#include "mplf/number_theory.hpp"

#include "mplf/errors.hpp"

namespace mplf {

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<long, int>> factorize(long n) {
  if (n < 1) throw DomainError("factorize: argument must be positive");
  std::vector<std::pair<long, int>> out;
  for (long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<long> divisors(long n) {
  std::vector<long> out;
  for (long d = 1; d <= n; ++d) {
    if (n % d == 0) out.push_back(d);
  }
  return out;
}

long powmod(long base, long exponent, long modulus) {
  if (modulus == 1) return 0;
  __int128 result = 1;
  __int128 b = mod(base, modulus);
  while (exponent > 0) {
    if (exponent & 1) result = result * b % modulus;
    b = b * b % modulus;
    exponent >>= 1;
  }
  return static_cast<long>(result);
}

long primitive_root_prime_power(long p, int e) {
  if (p == 2 || !is_prime(p)) throw DomainError("primitive root needs an odd prime");
  const auto factors = factorize(p - 1);
  long g = 2;
  for (;; ++g) {
    bool ok = true;
    for (const auto& [q, k] : factors) {
      if (powmod(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  // A root mod p fails mod p^2 only if g^{p-1} = 1 (mod p^2); g + p then works.
  if (e >= 2 && powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

}  // namespace mplf
