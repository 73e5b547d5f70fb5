#pragma once

#include <vector>

#include "rmsplit/linalg.hpp"
#include "rmsplit/numberfield.hpp"

namespace rmsplit {

// Lattice of rank m <= 4 with a positive definite integral Gram matrix.
// `basis` records the change of basis (rows, in parent coordinates) when the
// lattice was derived from another one; identity otherwise.
class QuadLattice {
 public:
  explicit QuadLattice(IntMat gram);
  QuadLattice(IntMat gram, IntMat basis);

  int rank() const { return (int)gram_.size(); }
  const IntMat& gram() const { return gram_; }
  const IntMat& basis() const { return basis_; }
  i64 gram_det() const;

  // Exact Q(v) for integer coordinates v.
  i64 quad(const std::vector<i64>& v) const;

 private:
  IntMat gram_;
  IntMat basis_;
};

// All nonzero vectors with Q(v) <= N, one per +-pair (first nonzero
// coordinate positive), exact final filter.
std::vector<std::vector<i64>> short_vectors_half(const QuadLattice& L, i64 N);

// Exact squared successive minima (mu_i^2), by enumeration.
std::vector<i64> successive_minima_squared(const QuadLattice& L);

// Successive minima as lengths (sqrt of Q-values).
std::vector<Real> successive_minima(const QuadLattice& L);

struct ShortCount {
  i64 count;     // #{v : Q(v) <= N}, zero vector included
  double bound;  // frozen c_m * sum_j N^{j/2} / (mu_1...mu_j), c_m = 8^m
};

ShortCount count_short(const QuadLattice& L, i64 N);

// Synthetic model of the special-endomorphism filtration: lattices
// M_n = Lambda + ell^k M for n = n0 + k e_v, Lambda saturated of rank <= 2.
struct FiltrationModel {
  QuadLattice M;   // model of M_{v,n0}
  IntMat Lambda;   // rows: basis of the saturated sublattice (may be empty)
  i64 ell;
  int e_v;
  int n0;

  FiltrationModel(QuadLattice M, IntMat Lambda, i64 ell, int e_v, int n0);
  int m() const { return M.rank(); }
  int m_prime() const { return (int)Lambda.size(); }
};

// The lattice Lambda + ell^k M for n = n0 + k e_v (basis in M's coordinates).
QuadLattice filtration_lattice(const FiltrationModel& model, int n);

// Verifies, exactly:
//   prod_{i<=j} mu_i(M_n) >= ell^-m * ell^{k(j-m')}  (frozen c = ell^-m),
//   d(M_{n+e_v})/d(M_n) = ell^{m-m'} per step, and ell*M_n within M_{n+e_v}.
bool minima_growth_check(const FiltrationModel& model, int n, int j);

struct ContainmentScale {
  i64 scale;    // minimal s with s*M within P + P'
  i64 disc_P;   // det Gram(P) = d^2
  IntMat Pperp; // basis of P-orthogonal complement inside M
};

// Works for any independent rank-2 P (rows in M's coordinates).
ContainmentScale containment_scale(const QuadLattice& M, const IntMat& P);

struct ConfinementReport {
  bool premise;    // ell^{2k} > s^2 d^8 N
  bool confined;   // every Q<=N vector of P + ell^k M lies in P
  i64 scale;
  i64 disc_P;
};

// P a saturated (primitive) rank-2 sublattice of M; the confinement
// conclusion is false for non-saturated P, so those are rejected.
ConfinementReport orthogonal_split_confinement(const QuadLattice& M, const IntMat& P, int k,
                                               i64 ell, i64 N);

}  // namespace rmsplit
