#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sslab {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// Reduction into [0, m).
inline i64 mod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

inline i64 mulmod(i64 a, i64 b, i64 m) {
  return static_cast<i64>(static_cast<__int128>(mod(a, m)) * mod(b, m) % m);
}

i64 powmod(i64 base, u64 exp, i64 m);

// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
i64 invmod(i64 a, i64 m);

// Exact power with overflow detection (throws std::overflow_error).
i64 ipow(i64 base, int exp);

// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

// ord_p(n) for n != 0; returns -1 for n == 0.
int valuation(i64 n, i64 p);

// Multiplicative order of a modulo m (gcd(a, m) must be 1).
i64 multiplicative_order(i64 a, i64 m);

// Trial-division factorisation; adequate for |n| < 2^62 with small factors.
std::vector<std::pair<i64, int>> factor(i64 n);

std::vector<i64> primes_up_to(i64 bound);

// Non-negative integer square root.
i64 isqrt(i64 n);

}  // namespace sslab
