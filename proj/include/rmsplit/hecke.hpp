#pragma once

#include <complex>
#include <vector>

#include "rmsplit/hzdiv.hpp"
#include "rmsplit/linalg.hpp"
#include "rmsplit/qform.hpp"

namespace rmsplit {

using Complex = std::complex<Real>;

// A point (z1, z2) of H x H.
struct PointH2 {
  Complex z1, z2;
  Real eps = 1e-10L;

  PointH2(Complex z1_, Complex z2_, Real eps_ = 1e-10L);
  Real height_product() const { return z1.imag() * z2.imag(); }
};

// 2x2 matrix over F with exact entries.  Gamma membership (for a = O_F):
// diagonal in O_F, upper-right in the inverse different, lower-left in the
// different, determinant 1.
class MatrixGL2F {
 public:
  MatrixGL2F(FieldRational u11, FieldRational u12, FieldRational u21, FieldRational u22);

  static MatrixGL2F identity(i64 D);
  static MatrixGL2F translation(const FieldRational& mu);       // (1, mu; 0, 1)
  static MatrixGL2F unit_move(const FieldElement& unit, int n); // diag(u^n, u^-n)
  static MatrixGL2F inversion(i64 D);                           // z -> -1/(D z)
  static MatrixGL2F hecke_rep(const FieldElement& lambda, i64 j);
  static MatrixGL2F hecke_rep_infinity(const FieldElement& lambda);

  const FieldRational& u11() const { return e_[0]; }
  const FieldRational& u12() const { return e_[1]; }
  const FieldRational& u21() const { return e_[2]; }
  const FieldRational& u22() const { return e_[3]; }
  i64 D() const { return e_[0].D(); }

  FieldRational det() const;
  MatrixGL2F operator*(const MatrixGL2F& o) const;
  MatrixGL2F conj() const;
  bool in_gamma() const;
  bool is_identity() const;

 private:
  FieldRational e_[4];
};

// Fractional linear action, sigma_i(g) on copy i; requires both embedded
// determinants positive.
PointH2 moebius_act(const MatrixGL2F& g, const PointH2& z);

struct ReduceOptions {
  int max_moves = 10000;
  int lookahead = 2;  // translation candidates per axis around the rounded solve
};

struct ReduceResult {
  PointH2 point;
  MatrixGL2F g;  // point = act(g, input)
  int moves = 0;
};

// Approximate fundamental-domain representative: greedy maximization of
// y1*y2 over unit scalings, translations by the inverse different, and the
// inversion, with a lookahead over nearby translates before each inversion.
ReduceResult reduce_fundamental(const PointH2& z, const QuadraticField& F,
                                const ReduceOptions& opt = {});

// The p+1 points reduce(R_j z), R_j = (1, j; 0, lambda) for j = 0..p-1 and
// R_inf = (lambda, 0; 0, 1); requires Nm(lambda) = p totally positive.
std::vector<PointH2> hecke_orbit(const PointH2& z, i64 p, const FieldElement& lambda,
                                 const QuadraticField& F);

// |a z1 z2 + gamma z1 + gamma' z2 + b| / sqrt(y1 y2); the normalization makes
// the value invariant under simultaneous transport (exactly, for det 1).
Real proximity(const PointH2& z, const ComponentMatrix& M);

// Unnormalized divisor equation value (z1 1) M (z2 1)^t.
Complex divisor_value(const PointH2& z, const ComponentMatrix& M);

// M -> U^t M U' in exact arithmetic; det multiplies by Nm(det U).
ComponentMatrix transport(const MatrixGL2F& U, const ComponentMatrix& M);

// Near-miss datum (m, l, eta) with m*l - Nm(eta) = p*r*normA.
struct NearMiss {
  i64 m;
  i64 l;
  FieldElement eta;
  i64 p;
  i64 r;
  i64 normA = 1;

  NearMiss(i64 m, i64 l, FieldElement eta, i64 p, i64 r, i64 normA = 1);
  ComponentMatrix component() const { return ComponentMatrix(m, l, eta, normA); }
};

struct CMPoint {
  PointH2 point;
  FieldElement A, B, C;  // f(z) = A z^2 + B z + C
};

// Intersection point of the two near-miss components: z1 the upper-half-plane
// root of f(z) = (eta1 z + l1)(eta2' + m2 z) - (eta2 z + l2)(eta1' + m1 z),
// z2 = -(eta1 z1 + l1)/(eta1' + m1 z1).
CMPoint cm_point(const NearMiss& n1, const NearMiss& n2);

struct SpecialPointForm {
  BinaryQF form;  // primitive reduced binary form of the restricted det form
  i64 content;
  IntMat basis;   // 2 x 4 integer coordinates (a/(D normA), b, g1, g2)
  IntMat gram2;   // 2 x 2 Gram (doubled off-diagonal entries folded exactly)
};

// Rank-2 solution lattice L_[z] = {M : |(z1 1) M (z2 1)^t| < eps, height <= H}
// and the reduced primitive binary form of det restricted to it.
SpecialPointForm special_point_form(const PointH2& z, const QuadraticField& F,
                                    const PolarizationModulus& mod, double H);

}  // namespace rmsplit
