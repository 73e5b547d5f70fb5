#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "rmsplit/intmath.hpp"

namespace rmsplit {

using Real = long double;

class FieldElement;

// Real quadratic field F = Q(sqrt(d)) with fundamental discriminant D.
// The ring of integers is Z[omega], omega = (D + sqrt(D))/2.
class QuadraticField {
 public:
  explicit QuadraticField(i64 d);
  static QuadraticField from_discriminant(i64 D);

  i64 d() const { return d_; }
  i64 D() const { return D_; }
  Real sqrtD() const { return sqrtD_; }

  FieldElement element(i64 x, i64 y) const;  // (x + y*sqrt(D))/2
  FieldElement integer(i64 n) const;
  FieldElement omega() const;
  FieldElement sqrtD_element() const;

 private:
  i64 d_;
  i64 D_;
  Real sqrtD_;
};

enum class SplittingType { Split, Inert, Ramified };

const char* to_string(SplittingType t);

// Exact element (x + y*sqrt(D))/2 of O_F, with x = y*D (mod 2).
class FieldElement {
 public:
  FieldElement(i64 x, i64 y, i64 D);

  i64 x() const { return x_; }
  i64 y() const { return y_; }
  i64 D() const { return D_; }

  i64 norm() const;   // x*x' = (x^2 - y^2 D)/4
  i64 trace() const;  // x + x' = x
  FieldElement conj() const;
  bool totally_positive() const;
  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational() const { return y_ == 0; }

  // sigma1 = (x + y sqrt D)/2, sigma2 = (x - y sqrt D)/2.
  Real embed1() const;
  Real embed2() const;
  std::pair<Real, Real> embeddings() const { return {embed1(), embed2()}; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement times(i64 n) const;
  FieldElement pow(int e) const;  // e >= 0
  bool operator==(const FieldElement& o) const;

  std::string str() const;

 private:
  i64 x_, y_, D_;
};

std::ostream& operator<<(std::ostream& os, const FieldElement& e);

struct ElementArith {
  i64 norm;
  i64 trace;
  FieldElement conjugate;
  bool totally_positive;
};

ElementArith element_arith(const FieldElement& e);

// Exact element (x + y*sqrt(D))/q of F, q > 0, gcd(x, y, q) = 1.
class FieldRational {
 public:
  FieldRational(i64 x, i64 y, i64 q, i64 D);
  static FieldRational of(const FieldElement& e);
  static FieldRational integer(i64 n, i64 D);
  static FieldRational zero(i64 D) { return integer(0, D); }
  static FieldRational one(i64 D) { return integer(1, D); }

  i64 x() const { return x_; }
  i64 y() const { return y_; }
  i64 q() const { return q_; }
  i64 D() const { return D_; }

  bool is_zero() const { return x_ == 0 && y_ == 0; }
  bool is_rational_integer() const { return q_ == 1 && y_ == 0; }
  // Membership in O_F, the inverse different (1/sqrt(D)) O_F, and the
  // different (sqrt(D)) O_F.
  bool is_integral() const;
  bool in_inv_different() const;
  bool in_different() const;

  FieldElement to_integral() const;  // throws unless is_integral()

  FieldRational conj() const;
  FieldRational operator+(const FieldRational& o) const;
  FieldRational operator-(const FieldRational& o) const;
  FieldRational operator*(const FieldRational& o) const;
  FieldRational operator-() const;
  bool operator==(const FieldRational& o) const;

  Real embed1() const;
  Real embed2() const;

  std::string str() const;

 private:
  void normalize();
  i64 x_, y_, q_, D_;
};

SplittingType splitting_type(const QuadraticField& F, i64 p);

// Generator of the unit group of O_F modulo +-1, found through the
// continued-fraction expansion of sqrt(d) (refined to the maximal order
// when d = 1 mod 4, where the unit may be half-integral).
FieldElement fundamental_unit(const QuadraticField& F);

// A totally positive lambda with Nm(lambda) = p, both embeddings in the
// fundamental band [sqrt(p)/u^2, sqrt(p)*u^2] of the unit-square action
// (u = larger embedding of the fundamental unit), minimal larger embedding
// among the finitely many candidates. Absent when no such lambda exists.
std::optional<FieldElement> split_generator(const QuadraticField& F, i64 p);

}  // namespace rmsplit
