#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "rmsplit/error.hpp"

namespace rmsplit {

using i64 = std::int64_t;
using i128 = __int128;

// Checked i64 arithmetic; throws Errc::overflow.
i64 mul_ck(i64 a, i64 b);
i64 add_ck(i64 a, i64 b);
i64 pow_ck(i64 base, int exp);

// Narrow an i128 back to i64, throwing Errc::overflow if it does not fit.
i64 narrow(i128 v);

// Floor square root of n >= 0.
i64 isqrt(i64 n);

// True iff n is a perfect square; optionally returns the nonnegative root.
bool is_square(i64 n, i64* root = nullptr);

// Floor division remainder in [0, m), m > 0.
i64 mod_floor(i64 a, i64 m);

bool is_prime(i64 n);
std::vector<i64> primes_upto(i64 n);

// Prime factorization of n >= 1 by trial division, sorted by prime.
std::vector<std::pair<i64, int>> factorize(i64 n);

// Kronecker symbol (a|n), full generality.
int kronecker(i64 a, i64 n);

// Squarefree kernel of n != 0 (product of primes with odd exponent); sign kept.
i64 squarefree_kernel(i64 n);

i64 pow_mod(i64 base, i64 exp, i64 mod);

}  // namespace rmsplit
