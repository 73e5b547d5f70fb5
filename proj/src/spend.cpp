#include "rmsplit/spend.hpp"

#include <algorithm>
#include <cmath>

namespace rmsplit {

namespace {

bool is_symmetric(const IntMat& G) {
  for (size_t i = 0; i < G.size(); ++i) {
    if (G[i].size() != G.size()) return false;
    for (size_t j = 0; j < i; ++j)
      if (G[i][j] != G[j][i]) return false;
  }
  return true;
}

bool is_positive_definite(const IntMat& G) {
  i64 maxabs = 0;
  for (auto& row : G)
    for (i64 x : row) maxabs = std::max(maxabs, std::abs(x));
  if (maxabs < ((i64)1 << 28)) {
    // Sylvester: leading principal minors positive (exact Bareiss dets,
    // guaranteed to fit in i128 at this entry size and rank <= 4).
    for (size_t k = 1; k <= G.size(); ++k) {
      IntMat sub(k, std::vector<i64>(k));
      for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) sub[i][j] = G[i][j];
      if (det_mat_wide(sub) <= 0) return false;
    }
    return true;
  }
  // Large entries (scaled filtration lattices): long double Cholesky.
  size_t m = G.size();
  std::vector<std::vector<Real>> a(m, std::vector<Real>(m));
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) a[i][j] = (Real)G[i][j];
  for (size_t k = 0; k < m; ++k) {
    if (!(a[k][k] > 0)) return false;
    for (size_t i = k + 1; i < m; ++i) {
      Real f = a[i][k] / a[k][k];
      for (size_t j = k; j < m; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return true;
}

}  // namespace

QuadLattice::QuadLattice(IntMat gram) : QuadLattice(std::move(gram), {}) {}

QuadLattice::QuadLattice(IntMat gram, IntMat basis) : gram_(std::move(gram)), basis_(std::move(basis)) {
  if (gram_.size() > 4) fail(Errc::domain, "rank must be <= 4");
  if (!is_symmetric(gram_)) fail(Errc::domain, "Gram matrix must be symmetric");
  if (!is_positive_definite(gram_)) fail(Errc::domain, "Gram matrix must be positive definite");
  if (basis_.empty()) basis_ = identity_mat((int)gram_.size());
}

i64 QuadLattice::gram_det() const { return det_mat(gram_); }

i64 QuadLattice::quad(const std::vector<i64>& v) const {
  i128 s = 0;
  int m = rank();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s += (i128)gram_[i][j] * v[i] * v[j];
  return narrow(s);
}

std::vector<std::vector<i64>> short_vectors_half(const QuadLattice& L, i64 N) {
  std::vector<std::vector<i64>> out;
  if (N < 0) return out;
  int m = L.rank();
  if (m == 0) return out;
  // Cholesky Q(v) = sum_i q_i (v_i + sum_{j>i} mu_ij v_j)^2 in long double;
  // float bounds carry slack, membership is decided by the exact Q.
  std::vector<std::vector<Real>> a(m, std::vector<Real>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = (Real)L.gram()[i][j];
  std::vector<Real> q(m);
  std::vector<std::vector<Real>> mu(m, std::vector<Real>(m, 0));
  for (int i = 0; i < m; ++i) {
    Real qi = a[i][i];
    for (int k = 0; k < i; ++k) qi -= q[k] * mu[k][i] * mu[k][i];
    q[i] = qi;
    if (!(q[i] > 0)) fail(Errc::numeric, "Cholesky failed on Gram matrix");
    for (int j = i + 1; j < m; ++j) {
      Real s = a[i][j];
      for (int k = 0; k < i; ++k) s -= q[k] * mu[k][i] * mu[k][j];
      mu[i][j] = s / q[i];
    }
  }
  std::vector<i64> v(m, 0);
  const Real slack = 1e-6L;
  // recursive descent from the last coordinate
  auto rec = [&](auto&& self, int i, Real remaining) -> void {
    Real center = 0;
    for (int j = i + 1; j < m; ++j) center += mu[i][j] * (Real)v[j];
    Real radius = std::sqrt(std::max<Real>(remaining, 0) / q[i]) + slack;
    i64 lo = (i64)std::ceil(-center - radius);
    i64 hi = (i64)std::floor(-center + radius);
    for (i64 t = lo; t <= hi; ++t) {
      v[i] = t;
      if (i == 0) {
        bool nonzero = false, leadpos = false;
        for (int j = 0; j < m; ++j) {
          if (v[j] != 0) {
            nonzero = true;
            leadpos = v[j] > 0;
            break;
          }
        }
        if (nonzero && leadpos && L.quad(v) <= N) out.push_back(v);
      } else {
        Real d = (Real)t + center;
        self(self, i - 1, remaining - q[i] * d * d);
      }
    }
    v[i] = 0;
  };
  rec(rec, m - 1, (Real)N * (1 + 1e-12L) + slack);
  return out;
}

std::vector<i64> successive_minima_squared(const QuadLattice& L) {
  int m = L.rank();
  i64 radius = 1;
  for (int i = 0; i < m; ++i) radius = std::max(radius, L.gram()[i][i]);
  auto vecs = short_vectors_half(L, radius);
  std::sort(vecs.begin(), vecs.end(), [&](const auto& u, const auto& w) {
    return L.quad(u) < L.quad(w);
  });
  std::vector<i64> minima;
  IntMat chosen;
  for (auto& vv : vecs) {
    if ((int)minima.size() == m) break;
    chosen.push_back(vv);
    if (rank_mat(chosen) == (int)chosen.size()) {
      minima.push_back(L.quad(vv));
    } else {
      chosen.pop_back();
    }
  }
  if ((int)minima.size() != m) fail(Errc::numeric, "minima enumeration incomplete");
  return minima;
}

std::vector<Real> successive_minima(const QuadLattice& L) {
  std::vector<Real> out;
  for (i64 q : successive_minima_squared(L)) out.push_back(std::sqrt((Real)q));
  return out;
}

ShortCount count_short(const QuadLattice& L, i64 N) {
  i64 count = (N >= 0) ? 2 * (i64)short_vectors_half(L, N).size() + 1 : 0;
  int m = L.rank();
  auto minima = successive_minima(L);
  double cm = std::pow(8.0, m);  // frozen Schmidt constant 4^m * 2^m
  double bound = 0, denom = 1;
  for (int j = 0; j <= m; ++j) {
    if (j > 0) denom *= (double)minima[j - 1];
    bound += std::pow((double)std::max<i64>(N, 0), j / 2.0) / denom;
  }
  return ShortCount{count, cm * bound};
}

FiltrationModel::FiltrationModel(QuadLattice M_, IntMat Lambda_, i64 ell_, int e_v_, int n0_)
    : M(std::move(M_)), Lambda(std::move(Lambda_)), ell(ell_), e_v(e_v_), n0(n0_) {
  if (!is_prime(ell)) fail(Errc::domain, "ell must be prime");
  if (e_v < 1 || n0 < 1) fail(Errc::domain, "e_v and n0 must be positive");
  if ((int)Lambda.size() > 2) fail(Errc::domain, "Lambda rank must be <= 2");
  if (!Lambda.empty()) {
    auto diag = smith_diagonal(Lambda);
    if ((int)diag.size() != (int)Lambda.size()) fail(Errc::domain, "Lambda not of full rank");
    for (i64 d : diag)
      if (d != 1) fail(Errc::domain, "Lambda must be saturated (co-torsion free)");
  }
}

QuadLattice filtration_lattice(const FiltrationModel& model, int n) {
  if (n < model.n0 || (n - model.n0) % model.e_v != 0)
    fail(Errc::domain, "n must be n0 + k*e_v, k >= 0");
  int k = (n - model.n0) / model.e_v;
  int m = model.m();
  i64 lk = pow_ck(model.ell, k);
  IntMat rows = model.Lambda;
  for (int i = 0; i < m; ++i) {
    std::vector<i64> e(m, 0);
    e[i] = lk;
    rows.push_back(e);
  }
  IntMat B = hnf_rows(rows);
  if ((int)B.size() != m) fail(Errc::inconsistent, "filtration lattice lost rank");
  IntMat G = mat_mul(mat_mul(B, model.M.gram()), transpose(B));
  return QuadLattice(G, B);
}

namespace {

// prod >= ell^e with prod, e >= 0, exact (guards against i128 overflow).
bool prod_at_least_power(i128 prod, i64 ell, i64 e) {
  i128 rhs = 1;
  for (i64 i = 0; i < e; ++i) {
    if (rhs > prod) return false;  // rhs only grows
    if (rhs > (i128)1 << 120) fail(Errc::overflow, "power comparison overflow");
    rhs *= ell;
  }
  return prod >= rhs;
}

}  // namespace

bool minima_growth_check(const FiltrationModel& model, int n, int j) {
  int m = model.m(), mp = model.m_prime();
  if (j < 1 || j > m) fail(Errc::domain, "j out of range");
  int k = (n - model.n0) / model.e_v;
  QuadLattice Mn = filtration_lattice(model, n);
  QuadLattice Mnext = filtration_lattice(model, n + model.e_v);

  // Product bound: prod mu_i(M_n) >= ell^{-m} ell^{k(j-m')} as exact squares.
  auto q = successive_minima_squared(Mn);
  i128 lhs = 1;
  for (int i = 0; i < j; ++i) lhs *= q[i];
  i64 e = 2LL * k * (j - mp) - 2LL * m;
  if (e > 0 && !prod_at_least_power(lhs, model.ell, e)) return false;

  // Per-step discriminant ratio ell^{m-m'} on d = sqrt(disc).
  i128 dn = det_mat_wide(Mn.gram()), dnext = det_mat_wide(Mnext.gram());
  i128 ratio = 1;
  for (int i = 0; i < 2 * (m - mp); ++i) ratio *= model.ell;
  if (dnext != dn * ratio) return false;

  // ell * M_n within M_{n+e_v}, exactly (ambient coordinates).
  for (int i = 0; i < m; ++i) {
    std::vector<i64> w = Mn.basis()[i];
    for (auto& c : w) c = mul_ck(c, model.ell);
    if (!in_row_span(Mnext.basis(), w)) return false;
  }
  return true;
}

ContainmentScale containment_scale(const QuadLattice& M, const IntMat& P) {
  int m = M.rank();
  if ((int)P.size() != 2 || rank_mat(P) != 2) fail(Errc::domain, "P must have rank 2");
  // P' = orthogonal complement of P inside M.
  IntMat GPt = mat_mul(M.gram(), transpose(P));  // m x 2
  IntMat Pperp = left_kernel(GPt);               // (m-2) x m
  // Minimal s with s*M within P + P': exponent of M/(P+P').
  IntMat sum = P;
  for (auto& row : Pperp) sum.push_back(row);
  auto diag = smith_diagonal(sum);
  if ((int)diag.size() != m) fail(Errc::inconsistent, "P + P' not of full rank");
  i64 s = diag.back();
  // d^2 = disc of Q restricted to P.
  IntMat GP = mat_mul(mat_mul(P, M.gram()), transpose(P));
  i64 d2 = det_mat(GP);
  return ContainmentScale{s, d2, Pperp};
}

ConfinementReport orthogonal_split_confinement(const QuadLattice& M, const IntMat& P, int k,
                                               i64 ell, i64 N) {
  int m = M.rank();
  if ((int)P.size() != 2) fail(Errc::domain, "P must have rank 2");
  {
    auto diag = smith_diagonal(P);
    if (diag.size() != 2 || diag[0] != 1 || diag[1] != 1)
      fail(Errc::domain, "P must be primitive in M");
  }
  auto cs = containment_scale(M, P);
  i64 s = cs.scale, d2 = cs.disc_P;

  i128 lhs = 1;
  for (int i = 0; i < 2 * k; ++i) {
    lhs *= ell;
    if (lhs > (i128)1 << 120) fail(Errc::overflow, "ell^{2k} overflow");
  }
  i128 rhs = (i128)s * s;
  for (int i = 0; i < 4; ++i) rhs *= d2;
  rhs *= N;
  bool premise = lhs > rhs;

  // Enumerate P + ell^k M and verify confinement into P.
  i64 lk = pow_ck(ell, k);
  IntMat rows = P;
  for (int i = 0; i < m; ++i) {
    std::vector<i64> e(m, 0);
    e[i] = lk;
    rows.push_back(e);
  }
  IntMat B = hnf_rows(rows);
  QuadLattice Lk(mat_mul(mat_mul(B, M.gram()), transpose(B)), B);
  bool confined = true;
  for (auto& v : short_vectors_half(Lk, N)) {
    std::vector<i64> w(m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) w[j] = add_ck(w[j], mul_ck(v[i], B[i][j]));
    if (!in_row_span(P, w)) {
      confined = false;
      break;
    }
  }
  return ConfinementReport{premise, confined, s, d2};
}

}  // namespace rmsplit
