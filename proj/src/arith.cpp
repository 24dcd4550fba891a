#include "sslab/arith.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace sslab {

i64 powmod(i64 base, u64 exp, i64 m) {
  if (m == 1) return 0;
  i64 result = 1;
  i64 b = mod(base, m);
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, b, m);
    b = mulmod(b, b, m);
    exp >>= 1U;
  }
  return result;
}

i64 invmod(i64 a, i64 m) {
  i64 old_r = mod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::domain_error("invmod: element is not invertible");
  return mod(old_s, m);
}

i64 ipow(i64 base, int exp) {
  if (exp < 0) throw std::invalid_argument("ipow: negative exponent");
  i64 result = 1;
  for (int i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) throw std::overflow_error("ipow overflow");
  }
  return result;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int r) {
  auto mm = [n](u64 x, u64 y) { return static_cast<u64>(static_cast<unsigned __int128>(x) * y % n); };
  u64 x = 1, b = a % n, e = d;
  while (e > 0) {
    if (e & 1U) x = mm(x, b);
    b = mm(b, b);
    e >>= 1U;
  }
  if (x == 1 || x == n - 1) return false;
  for (int i = 1; i < r; ++i) {
    x = mm(x, x);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (miller_rabin_witness(n, a, d, r)) return false;
  }
  return true;
}

int valuation(i64 n, i64 p) {
  if (n == 0) return -1;
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

i64 multiplicative_order(i64 a, i64 m) {
  if (std::gcd(mod(a, m), m) != 1) throw std::domain_error("multiplicative_order: not a unit");
  i64 x = mod(a, m);
  i64 k = 1;
  while (x != 1 % m) {
    x = mulmod(x, a, m);
    ++k;
  }
  return k;
}

std::vector<std::pair<i64, int>> factor(i64 n) {
  std::vector<std::pair<i64, int>> out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  for (i64 p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<i64> primes_up_to(i64 bound) {
  std::vector<i64> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (i64 i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt of negative");
  auto r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace sslab
