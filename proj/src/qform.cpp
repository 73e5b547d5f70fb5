#include "rmsplit/qform.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

namespace rmsplit {

BinaryQF::BinaryQF(i64 a_, i64 b_, i64 c_) : a(a_), b(b_), c(c_) {
  if (a <= 0 || disc() >= 0) fail(Errc::domain, "form must be positive definite");
}

i64 BinaryQF::eval(i64 x, i64 y) const {
  i128 v = (i128)a * x * x + (i128)b * x * y + (i128)c * y * y;
  return narrow(v);
}

i64 BinaryQF::content() const { return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)); }

bool BinaryQF::is_reduced() const {
  if (!(std::abs(b) <= a && a <= c)) return false;
  if ((std::abs(b) == a || a == c) && b < 0) return false;
  return true;
}

std::string BinaryQF::str() const {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

namespace {
i64 floordiv(i64 p, i64 q) {
  i64 r = p / q;
  if ((p % q != 0) && ((p < 0) != (q < 0))) --r;
  return r;
}
}  // namespace

BinaryQF reduce(const BinaryQF& Q) {
  i64 a = Q.a, b = Q.b, c = Q.c;
  while (true) {
    // Translate: b into (-a, a].
    if (b > a || b <= -a) {
      i64 k = floordiv(a - b, 2 * a);
      c = narrow((i128)c + (i128)k * b + (i128)k * k * a);
      b = b + 2 * k * a;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    break;
  }
  if ((b < 0) && (-b == a || a == c)) b = -b;
  return BinaryQF(a, b, c);
}

i64 class_number(i64 disc) {
  if (disc >= 0) fail(Errc::domain, "discriminant must be negative");
  if (mod_floor(disc, 4) != 0 && mod_floor(disc, 4) != 1)
    fail(Errc::domain, "discriminant must be 0 or 1 mod 4");
  i64 count = 0;
  i64 bmax = isqrt(-disc / 3);
  for (i64 b = mod_floor(disc, 2); b <= bmax; b += 2) {
    i64 n4 = b * b - disc;  // = 4ac
    i64 n = n4 / 4;
    for (i64 a = std::max<i64>(b, 1); a * a <= n; ++a) {
      if (n % a) continue;
      i64 c = n / a;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      // (a, b, c) reduced; (a, -b, c) is a distinct class when 0 < b < a < c.
      count += (b > 0 && b < a && a < c) ? 2 : 1;
    }
  }
  return count;
}

std::optional<std::pair<i64, i64>> represents(const BinaryQF& Q, i64 n) {
  if (n < 0) return std::nullopt;
  if (n == 0) return std::make_pair<i64, i64>(0, 0);
  i64 absd = -Q.disc();
  i64 xmax = isqrt((4 * Q.c * n) / absd) + 1;
  i64 ymax = isqrt((4 * Q.a * n) / absd) + 1;
  for (i64 ax = 0; ax <= xmax; ++ax) {
    for (int sx = 0; sx < (ax == 0 ? 1 : 2); ++sx) {
      i64 x = sx ? -ax : ax;
      for (i64 ay = 0; ay <= ymax; ++ay) {
        for (int sy = 0; sy < (ay == 0 ? 1 : 2); ++sy) {
          i64 y = sy ? -ay : ay;
          if (Q.eval(x, y) == n) return std::make_pair(x, y);
        }
      }
    }
  }
  return std::nullopt;
}

IntervalCount count_represented_interval(const BinaryQF& Q, i64 N) {
  if (N < 4) fail(Errc::domain, "N must be >= 4");
  i64 lo = isqrt(N);
  if (lo * lo < N) ++lo;  // ceil(sqrt N)
  std::vector<char> rep(N + 1, 0);
  i64 absd = -Q.disc();
  i64 xmax = isqrt((4 * Q.c * N) / absd) + 1;
  i64 ymax = isqrt((4 * Q.a * N) / absd) + 1;
  for (i64 x = -xmax; x <= xmax; ++x)
    for (i64 y = -ymax; y <= ymax; ++y) {
      i64 v = Q.eval(x, y);
      if (v >= 0 && v <= N) rep[v] = 1;
    }
  i64 count = 0;
  for (i64 n = lo; n <= N; ++n) count += rep[n];
  double bound = 1.0 + 4.0 * std::sqrt(2.0 * (double)N) + 8.0 * (double)N / std::sqrt((double)absd);
  return IntervalCount{count, bound};
}

}  // namespace rmsplit
