#include "rmsplit/hzdiv.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace rmsplit {

ComponentMatrix::ComponentMatrix(i64 a, i64 b, FieldElement gamma, i64 normA)
    : a_(a), b_(b), gamma_(gamma), normA_(normA) {
  if (normA_ < 1) fail(Errc::domain, "normA must be >= 1");
  if (a_ % (gamma_.D() * normA_) != 0)
    fail(Errc::invalid_element, "a must be divisible by D*normA");
}

i64 ComponentMatrix::det() const {
  return narrow((i128)a_ * b_ - (i128)gamma_.norm());
}

bool hz_nonempty(i64 r, const QuadraticField& F, const PolarizationModulus& mod) {
  if (r < 1) fail(Errc::domain, "r must be >= 1");
  i64 D = F.D();
  // Residues of -Nm(gamma) mod D over gamma in O_F (a full period suffices:
  // Nm(gamma + D delta) = Nm(gamma) mod D).
  std::set<i64> residues;
  for (i64 y = 0; y < 2 * D; ++y)
    for (i64 x = mod_floor(y * D, 2); x < 2 * D; x += 2) {
      i64 nm = narrow(((i128)x * x - (i128)y * y * D) / 4);
      residues.insert(mod_floor(-nm, D));
    }
  return residues.count(mod_floor(r * mod.normA, D)) > 0;
}

bool hz_is_compact(i64 r, const QuadraticField& F) {
  if (r == 0) fail(Errc::domain, "r must be positive");
  if (r < 0) fail(Errc::domain, "r must be positive");
  for (auto [p, e] : factorize(r)) {
    if (splitting_type(F, p) == SplittingType::Inert && e % 2 == 1) return true;
  }
  return false;
}

namespace {

// (a, b)_p for odd prime p: write a = p^alpha u, b = p^beta v.
int hilbert_odd(i64 a, i64 b, i64 p) {
  int alpha = 0, beta = 0;
  while (a % p == 0) a /= p, ++alpha;
  while (b % p == 0) b /= p, ++beta;
  int eps = (int)mod_floor((p - 1) / 2, 2);
  int s = 1;
  if ((alpha * beta * eps) % 2) s = -s;
  if (beta % 2 && kronecker(a, p) == -1) s = -s;
  if (alpha % 2 && kronecker(b, p) == -1) s = -s;
  return s;
}

int hilbert_two(i64 a, i64 b) {
  int alpha = 0, beta = 0;
  while (a % 2 == 0) a /= 2, ++alpha;
  while (b % 2 == 0) b /= 2, ++beta;
  auto eps = [](i64 u) { return (int)mod_floor((u - 1) / 2, 2); };
  auto omega = [](i64 u) { return (int)mod_floor((u * u - 1) / 8, 2); };
  int e = eps(a) * eps(b) + alpha * omega(b) + beta * omega(a);
  return (e % 2) ? -1 : 1;
}

}  // namespace

int hilbert_symbol(i64 a, i64 b, i64 p) {
  if (a == 0 || b == 0) fail(Errc::domain, "hilbert symbol needs nonzero entries");
  if (p == -1) return (a < 0 && b < 0) ? -1 : 1;
  if (p == 2) return hilbert_two(a, b);
  if (!is_prime(p)) fail(Errc::domain, "p must be prime or -1");
  return hilbert_odd(a, b, p);
}

std::set<i64> quaternion_ramified_primes(i64 D, i64 minus_rNormA) {
  if (D <= 0) fail(Errc::domain, "D must be positive");
  if (minus_rNormA >= 0) fail(Errc::domain, "second entry must be negative");
  if (hilbert_symbol(D, minus_rNormA, -1) == -1)
    fail(Errc::inconsistent, "algebra ramified at infinity");
  std::set<i64> ram;
  std::set<i64> candidates = {2};
  for (auto [p, e] : factorize(D)) candidates.insert(p);
  for (auto [p, e] : factorize(-minus_rNormA)) candidates.insert(p);
  for (i64 p : candidates)
    if (hilbert_symbol(D, minus_rNormA, p) == -1) ram.insert(p);
  if (ram.size() % 2 != 0) fail(Errc::inconsistent, "odd ramification set");
  return ram;
}

std::vector<ComponentMatrix> enumerate_components(i64 r, const QuadraticField& F,
                                                  const PolarizationModulus& mod, double H) {
  std::vector<ComponentMatrix> out;
  if (H < 0) return out;
  i64 D = F.D();
  i64 step = D * mod.normA;
  i64 target = mul_ck(r, mod.normA);
  Real sD = F.sqrtD();
  // Table of gamma in O_F with both embeddings bounded by H, keyed by norm.
  std::unordered_map<i64, std::vector<std::pair<i64, i64>>> by_norm;
  i64 ymax = (i64)(2.0L * (Real)H / sD) + 1;
  for (i64 y = -ymax; y <= ymax; ++y) {
    for (i64 x = -(i64)(2 * H) - 1 + mod_floor((i64)(2 * H) + 1 + y * D, 2); x <= (i64)(2 * H) + 1;
         x += 2) {
      Real e1 = ((Real)x + (Real)y * sD) / 2;
      Real e2 = ((Real)x - (Real)y * sD) / 2;
      if (std::abs(e1) > (Real)H || std::abs(e2) > (Real)H) continue;
      i64 nm = narrow(((i128)x * x - (i128)y * y * D) / 4);
      by_norm[nm].push_back({x, y});
    }
  }
  i64 amax = (i64)std::floor(H);
  for (i64 a = -(amax / step) * step; a <= amax; a += step) {
    for (i64 b = -amax; b <= amax; ++b) {
      i64 need = narrow((i128)a * b - (i128)target);  // Nm(gamma)
      auto it = by_norm.find(need);
      if (it == by_norm.end()) continue;
      for (auto [x, y] : it->second)
        out.push_back(ComponentMatrix(a, b, FieldElement(x, y, D), mod.normA));
    }
  }
  std::sort(out.begin(), out.end(), [](const ComponentMatrix& A, const ComponentMatrix& B) {
    if (A.a() != B.a()) return A.a() < B.a();
    if (A.b() != B.b()) return A.b() < B.b();
    if (A.gamma().x() != B.gamma().x()) return A.gamma().x() < B.gamma().x();
    return A.gamma().y() < B.gamma().y();
  });
  return out;
}

HZDivisor hz_divisor(i64 r, const QuadraticField& F, const PolarizationModulus& mod, double H) {
  if (r < 1) fail(Errc::domain, "r must be >= 1");
  return HZDivisor{r, F, mod, enumerate_components(r, F, mod, H)};
}

std::vector<i64> compact_family(const QuadraticField& F, i64 X) {
  std::vector<i64> out;
  if (X < 2) return out;
  for (i64 q : primes_upto(X))
    if (splitting_type(F, q) == SplittingType::Inert) out.push_back(mul_ck(q, F.D()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rmsplit
