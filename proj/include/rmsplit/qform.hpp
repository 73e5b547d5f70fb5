#pragma once

#include <optional>
#include <string>
#include <utility>

#include "rmsplit/intmath.hpp"

namespace rmsplit {

// Positive definite integral binary quadratic form a x^2 + b xy + c y^2.
struct BinaryQF {
  i64 a, b, c;

  BinaryQF(i64 a, i64 b, i64 c);

  i64 disc() const { return b * b - 4 * a * c; }
  i64 eval(i64 x, i64 y) const;
  i64 content() const;
  bool is_reduced() const;
  bool operator==(const BinaryQF& o) const { return a == o.a && b == o.b && c == o.c; }
  std::string str() const;
};

// Gauss-reduced representative: |b| <= a <= c, b >= 0 if |b| = a or a = c.
BinaryQF reduce(const BinaryQF& Q);

// Number of primitive reduced forms of discriminant disc < 0.
i64 class_number(i64 disc);

// A witness (x, y) with Q(x, y) = n, searched over the exact
// positive-definite box |x| <= sqrt(4cn/|disc|), |y| <= sqrt(4an/|disc|).
std::optional<std::pair<i64, i64>> represents(const BinaryQF& Q, i64 n);

struct IntervalCount {
  i64 count;    // #{n in [sqrt(N), N] represented by Q}
  double bound; // 1 + 4 sqrt(2N) + 8N/sqrt(|disc|)
};

IntervalCount count_represented_interval(const BinaryQF& Q, i64 N);

}  // namespace rmsplit
