#include "doctest.h"
#include "rmsplit/intmath.hpp"

using namespace rmsplit;

TEST_SUITE_BEGIN("intmath");

TEST_CASE("isqrt and is_square") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(15) == 3);
  CHECK(isqrt(16) == 4);
  CHECK(isqrt(999999999999LL) == 999999);
  i64 r = 0;
  CHECK(is_square(49, &r));
  CHECK(r == 7);
  CHECK_FALSE(is_square(50));
  CHECK_FALSE(is_square(-4));
}

TEST_CASE("kronecker symbol") {
  // (5|p) for split/inert primes of Q(sqrt5)
  CHECK(kronecker(5, 11) == 1);
  CHECK(kronecker(5, 19) == 1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(5, 3) == -1);
  CHECK(kronecker(5, 5) == 0);
  CHECK(kronecker(8, 7) == 1);   // 8 = 2^3, (2|7) = 1
  CHECK(kronecker(13, 3) == 1);  // 13 = 1 mod 3
  CHECK(kronecker(-4, 5) == 1);
  // Euler criterion cross-check over odd primes
  for (i64 p : primes_upto(100)) {
    if (p == 2) continue;
    for (i64 a = 1; a < p; ++a) {
      i64 e = pow_mod(a, (p - 1) / 2, p);
      int k = kronecker(a, p);
      CHECK(k == (e == 1 ? 1 : -1));
    }
  }
}

TEST_CASE("factorize and squarefree kernel") {
  auto f = factorize(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<i64, int>{2, 3});
  CHECK(f[1] == std::pair<i64, int>{3, 2});
  CHECK(f[2] == std::pair<i64, int>{5, 1});
  CHECK(squarefree_kernel(360) == 10);
  CHECK(squarefree_kernel(-12) == -3);
  CHECK(squarefree_kernel(49) == 1);
}

TEST_CASE("overflow guards") {
  CHECK_THROWS_AS(mul_ck((i64)1 << 62, 4), Error);
  CHECK(mul_ck(1 << 20, 1 << 20) == (i64)1 << 40);
  CHECK_THROWS_AS(pow_ck(10, 20), Error);
}

TEST_SUITE_END();
