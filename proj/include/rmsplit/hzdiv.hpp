#pragma once

#include <optional>
#include <set>
#include <vector>

#include "rmsplit/numberfield.hpp"

namespace rmsplit {

// Nm(a) of the polarization ideal; the toolkit works with a = O_F, Nm = 1.
struct PolarizationModulus {
  i64 normA = 1;
};

// Lattice vector M = (a, gamma; gamma', b) with a in (D normA) Z, b in Z,
// gamma in O_F; determinant quadratic form det(M) = a b - Nm(gamma).
class ComponentMatrix {
 public:
  ComponentMatrix(i64 a, i64 b, FieldElement gamma, i64 normA = 1);

  i64 a() const { return a_; }
  i64 b() const { return b_; }
  const FieldElement& gamma() const { return gamma_; }
  i64 normA() const { return normA_; }
  i64 det() const;

  ComponentMatrix operator-() const { return ComponentMatrix(-a_, -b_, -gamma_, normA_); }
  bool operator==(const ComponentMatrix& o) const {
    return a_ == o.a_ && b_ == o.b_ && gamma_ == o.gamma_;
  }

 private:
  i64 a_, b_;
  FieldElement gamma_;
  i64 normA_;
};

struct HZDivisor {
  i64 r;
  QuadraticField field;
  PolarizationModulus modulus;
  std::vector<ComponentMatrix> components;  // height-bounded slice

  // Special-endomorphism attribute for T(D*r0): Q(s) = det/D = r0*normA.
  // Empty when r is not divisible by D.
  std::optional<i64> special_endomorphism_norm() const {
    if (r % field.D() != 0) return std::nullopt;
    return (r / field.D()) * modulus.normA;
  }
};

// Assemble T(r) with all components of height at most H.
HZDivisor hz_divisor(i64 r, const QuadraticField& F, const PolarizationModulus& mod, double H);

// T(r) nonempty iff r*normA mod D is -Nm(gamma) mod D for some gamma in O_F.
bool hz_nonempty(i64 r, const QuadraticField& F, const PolarizationModulus& mod = {});

// T(r) compact iff r is not the norm of an ideal of O_F: some inert prime
// divides r to an odd power.
bool hz_is_compact(i64 r, const QuadraticField& F);

// Finite ramification set of the quaternion algebra (D, minus_rNormA / Q).
std::set<i64> quaternion_ramified_primes(i64 D, i64 minus_rNormA);

// Hilbert symbol (a, b)_p for prime p, and at infinity (p = -1).
int hilbert_symbol(i64 a, i64 b, i64 p);

// All M in L with det(M) = r*normA and max(|a|, |b|, |gamma|_1, |gamma|_2) <= H,
// sorted by (a, b, gamma.x, gamma.y).
std::vector<ComponentMatrix> enumerate_components(i64 r, const QuadraticField& F,
                                                  const PolarizationModulus& mod, double H);

// {qD : q <= X prime, inert in F}, ascending.
std::vector<i64> compact_family(const QuadraticField& F, i64 X);

}  // namespace rmsplit
