#pragma once

// Brute-force oracles used by the tests.  These stay independent of the
// library's implementation paths on purpose.

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "rmsplit/intmath.hpp"
#include "rmsplit/qform.hpp"

namespace oracles {

using rmsplit::i128;
using rmsplit::i64;

// Splitting of p in Z[omega] via root count of the minimal polynomial of
// omega = (D + sqrt D)/2: t^2 - D t + (D^2 - D)/4 mod p.
// 2 roots: split, double root: ramified, none: inert.
inline int omega_root_count(i64 D, i64 p) {
  i64 c = (D * D - D) / 4;
  std::set<i64> roots;
  bool dbl = false;
  for (i64 t = 0; t < p; ++t) {
    i64 v = rmsplit::mod_floor(t * t - D * t + c, p);
    if (v == 0) roots.insert(t);
  }
  if (roots.size() == 1) {
    i64 t = *roots.begin();
    // double root iff derivative 2t - D also vanishes
    dbl = rmsplit::mod_floor(2 * t - D, p) == 0;
  }
  if (roots.size() == 2) return 2;
  if (roots.size() == 1 && dbl) return 0;  // ramified marker
  if (roots.size() == 1) return 2;         // cannot happen for squarefree
  return -1;                               // inert
}

// Splitting by factorization of the norm form: p (odd of good shape) has a
// nontrivial zero of Nm(x + y omega) mod p over x, y in [-p, p] iff p is
// split or ramified; p | D separates the ramified case.
inline int norm_form_splitting(i64 D, i64 p) {
  // Nm(x + y omega) = x^2 + x y Tr(omega) + y^2 Nm(omega)
  i64 tr = D, nm = (D * D - D) / 4;
  bool has_zero = false;
  for (i64 x = -p; x <= p && !has_zero; ++x)
    for (i64 y = -p; y <= p && !has_zero; ++y) {
      if (rmsplit::mod_floor(x, p) == 0 && rmsplit::mod_floor(y, p) == 0) continue;
      i128 v = (i128)x * x + (i128)x * y * tr + (i128)y * y * nm;
      if (rmsplit::mod_floor((i64)(v % p), p) == 0) has_zero = true;
    }
  if (!has_zero) return -1;          // inert
  return (D % p == 0) ? 0 : 2;       // ramified : split
}

// Lattice point count of a positive definite Gram matrix by plain box
// enumeration: |v_i| <= box.
inline i64 box_count(const std::vector<std::vector<i64>>& gram, i64 N, i64 box) {
  int m = (int)gram.size();
  std::vector<i64> v(m, -box);
  i64 count = 0;
  while (true) {
    i128 q = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) q += (i128)gram[i][j] * v[i] * v[j];
    if (q <= N) ++count;
    int i = 0;
    while (i < m && v[i] == box) v[i++] = -box;
    if (i == m) break;
    ++v[i];
  }
  return count;
}

// Exact successive minima of a rank-2 Gram matrix by box enumeration.
inline std::vector<i64> minima2_naive(const std::vector<std::vector<i64>>& gram, i64 box) {
  std::vector<std::pair<i64, std::pair<i64, i64>>> vals;
  for (i64 x = -box; x <= box; ++x)
    for (i64 y = -box; y <= box; ++y) {
      if (x == 0 && y == 0) continue;
      i64 q = gram[0][0] * x * x + 2 * gram[0][1] * x * y + gram[1][1] * y * y;
      vals.push_back({q, {x, y}});
    }
  std::sort(vals.begin(), vals.end());
  i64 mu1 = vals[0].first;
  auto [x1, y1] = vals[0].second;
  for (auto& [q, xy] : vals) {
    if (xy.first * y1 - xy.second * x1 != 0) return {mu1, q};
  }
  return {mu1};
}

// Local solubility oracle for the Hilbert symbol (a, b)_p with valuations
// of a, b at most 1: a x^2 + b y^2 = z^2 has a nontrivial p-adic solution
// iff a primitive solution exists mod p^3 (odd p) resp. 2^6; a primitive
// solution has a unit coordinate whose partial derivative has valuation
// at most 1 (at most 2 for p = 2), so Hensel lifting applies.
inline int hilbert_by_search(i64 a, i64 b, i64 p) {
  // square factors do not change the symbol
  a = rmsplit::squarefree_kernel(a);
  b = rmsplit::squarefree_kernel(b);
  for (i64 t : {a, b}) {
    int v = 0;
    while (t % p == 0) t /= p, ++v;
    if (v > 1) throw std::runtime_error("oracle limited to valuations <= 1");
  }
  i64 mod = (p == 2) ? 64 : p * p * p;
  i64 am = rmsplit::mod_floor(a, mod), bm = rmsplit::mod_floor(b, mod);
  for (i64 x = 0; x < mod; ++x)
    for (i64 y = 0; y < mod; ++y) {
      i64 q = (i64)(((i128)am * x % mod * x + (i128)bm * y % mod * y) % mod);
      for (i64 z = 0; z < mod; ++z) {
        if (x % p == 0 && y % p == 0 && z % p == 0) continue;
        if ((i64)(((i128)z * z - q) % mod + mod) % mod == 0) return 1;
      }
    }
  return -1;
}

// SL2(Z)-equivalence of forms by BFS over the generators S, T, T^-1 up to a
// word-length bound.
inline bool equivalent_by_bfs(rmsplit::BinaryQF A, rmsplit::BinaryQF B, int max_depth) {
  auto key = [](const rmsplit::BinaryQF& f) { return std::array<i64, 3>{f.a, f.b, f.c}; };
  auto applyS = [](const rmsplit::BinaryQF& f) { return rmsplit::BinaryQF(f.c, -f.b, f.a); };
  auto applyT = [](const rmsplit::BinaryQF& f, i64 s) {
    // x -> x + s y
    return rmsplit::BinaryQF(f.a, f.b + 2 * s * f.a, f.a * s * s + f.b * s + f.c);
  };
  std::set<std::array<i64, 3>> seen;
  std::vector<rmsplit::BinaryQF> frontier{A};
  seen.insert(key(A));
  if (key(A) == key(B)) return true;
  for (int d = 0; d < max_depth; ++d) {
    std::vector<rmsplit::BinaryQF> next;
    for (auto& f : frontier) {
      for (auto& g : {applyS(f), applyT(f, 1), applyT(f, -1)}) {
        if (seen.insert(key(g)).second) {
          if (key(g) == key(B)) return true;
          next.push_back(g);
        }
      }
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace oracles
