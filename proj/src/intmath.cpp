#include "rmsplit/intmath.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace rmsplit {

namespace {
constexpr i64 kMax = std::numeric_limits<i64>::max();
constexpr i64 kMin = std::numeric_limits<i64>::min();
}  // namespace

i64 mul_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) fail(Errc::overflow, "i64 multiply overflow");
  return r;
}

i64 add_ck(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) fail(Errc::overflow, "i64 add overflow");
  return r;
}

i64 pow_ck(i64 base, int exp) {
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = mul_ck(r, base);
  return r;
}

i64 narrow(i128 v) {
  if (v > (i128)kMax || v < (i128)kMin) fail(Errc::overflow, "i128 does not fit in i64");
  return (i64)v;
}

i64 isqrt(i64 n) {
  if (n < 0) fail(Errc::domain, "isqrt of negative");
  if (n == 0) return 0;
  i64 r = (i64)std::sqrt((long double)n);
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n, i64* root) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

i64 mod_floor(i64 a, i64 m) {
  i64 r = a % m;
  if (r < 0) r += (m > 0 ? m : -m);
  return r;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2LL, 3LL, 5LL, 7LL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (i64 d = 11; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

std::vector<i64> primes_upto(i64 n) {
  std::vector<i64> out;
  if (n < 2) return out;
  std::vector<bool> sieve(n + 1, true);
  for (i64 i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (i64 j = i * i; j <= n; j += i) sieve[j] = false;
  }
  return out;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
  if (n < 1) fail(Errc::domain, "factorize expects n >= 1");
  std::vector<std::pair<i64, int>> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -sign;
  }
  int v = 0;
  while (n % 2 == 0) n /= 2, ++v;
  if (v % 2) {
    i64 am8 = mod_floor(a, 8);
    if (am8 % 2 == 0) return 0;
    if (am8 == 3 || am8 == 5) sign = -sign;
  }
  a = mod_floor(a, n);
  // Jacobi symbol (a|n) with n odd positive.
  int t = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) t = -t;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) t = -t;
    a %= n;
  }
  if (n != 1) return 0;
  return sign * t;
}

i64 squarefree_kernel(i64 n) {
  if (n == 0) fail(Errc::domain, "squarefree kernel of 0");
  i64 sign = n < 0 ? -1 : 1;
  i64 m = std::abs(n), k = 1;
  for (auto [p, e] : factorize(m))
    if (e % 2) k *= p;
  return sign * k;
}

i64 pow_mod(i64 base, i64 exp, i64 mod) {
  i64 r = 1 % mod;
  base = mod_floor(base, mod);
  while (exp > 0) {
    if (exp & 1) r = narrow((i128)r * base % mod);
    base = narrow((i128)base * base % mod);
    exp >>= 1;
  }
  return r;
}

}  // namespace rmsplit
