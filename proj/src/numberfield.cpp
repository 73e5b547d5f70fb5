#include "rmsplit/numberfield.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <vector>

namespace rmsplit {

namespace {

bool squarefree(i64 d) {
  for (i64 k = 2; k * k <= d; ++k)
    if (d % (k * k) == 0) return false;
  return true;
}

}  // namespace

QuadraticField::QuadraticField(i64 d) : d_(d) {
  if (d <= 1 || !squarefree(d)) fail(Errc::domain, "d must be squarefree > 1");
  D_ = (mod_floor(d, 4) == 1) ? d : 4 * d;
  sqrtD_ = std::sqrt((Real)D_);
}

QuadraticField QuadraticField::from_discriminant(i64 D) {
  if (D <= 1) fail(Errc::domain, "discriminant must be > 1");
  i64 m4 = mod_floor(D, 4);
  if (m4 == 1) {
    if (!squarefree(D)) fail(Errc::domain, "not a fundamental discriminant");
    return QuadraticField(D);
  }
  if (m4 == 0) {
    i64 d = D / 4;
    if (mod_floor(d, 4) == 1 || !squarefree(d))
      fail(Errc::domain, "not a fundamental discriminant");
    return QuadraticField(d);
  }
  fail(Errc::domain, "discriminant must be 0 or 1 mod 4");
}

FieldElement QuadraticField::element(i64 x, i64 y) const { return FieldElement(x, y, D_); }
FieldElement QuadraticField::integer(i64 n) const { return FieldElement(2 * n, 0, D_); }
FieldElement QuadraticField::omega() const { return FieldElement(D_, 1, D_); }
FieldElement QuadraticField::sqrtD_element() const { return FieldElement(0, 2, D_); }

const char* to_string(SplittingType t) {
  switch (t) {
    case SplittingType::Split: return "split";
    case SplittingType::Inert: return "inert";
    case SplittingType::Ramified: return "ramified";
  }
  return "?";
}

FieldElement::FieldElement(i64 x, i64 y, i64 D) : x_(x), y_(y), D_(D) {
  if (mod_floor(x - y * (D % 2), 2) != 0)
    fail(Errc::invalid_element, "parity violated: x != y*D (mod 2)");
}

i64 FieldElement::norm() const {
  i128 n = (i128)x_ * x_ - (i128)y_ * y_ * D_;
  // Parity guarantees divisibility by 4.
  return narrow(n / 4);
}

i64 FieldElement::trace() const { return x_; }

FieldElement FieldElement::conj() const { return FieldElement(x_, -y_, D_); }

bool FieldElement::totally_positive() const { return x_ > 0 && norm() > 0; }

Real FieldElement::embed1() const { return ((Real)x_ + (Real)y_ * std::sqrt((Real)D_)) / 2; }
Real FieldElement::embed2() const { return ((Real)x_ - (Real)y_ * std::sqrt((Real)D_)) / 2; }

FieldElement FieldElement::operator+(const FieldElement& o) const {
  return FieldElement(add_ck(x_, o.x_), add_ck(y_, o.y_), D_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  return FieldElement(add_ck(x_, -o.x_), add_ck(y_, -o.y_), D_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  i128 nx = ((i128)x_ * o.x_ + (i128)y_ * o.y_ * D_) / 2;
  i128 ny = ((i128)x_ * o.y_ + (i128)o.x_ * y_) / 2;
  return FieldElement(narrow(nx), narrow(ny), D_);
}

FieldElement FieldElement::operator-() const { return FieldElement(-x_, -y_, D_); }

FieldElement FieldElement::times(i64 n) const {
  return FieldElement(mul_ck(x_, n), mul_ck(y_, n), D_);
}

FieldElement FieldElement::pow(int e) const {
  if (e < 0) fail(Errc::domain, "negative power of an integral element");
  FieldElement r(2, 0, D_);
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool FieldElement::operator==(const FieldElement& o) const {
  return x_ == o.x_ && y_ == o.y_ && D_ == o.D_;
}

std::string FieldElement::str() const {
  std::ostringstream os;
  os << "(" << x_ << (y_ < 0 ? "-" : "+") << std::abs(y_) << "*sqrt" << D_ << ")/2";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const FieldElement& e) { return os << e.str(); }

ElementArith element_arith(const FieldElement& e) {
  return ElementArith{e.norm(), e.trace(), e.conj(), e.totally_positive()};
}

FieldRational::FieldRational(i64 x, i64 y, i64 q, i64 D) : x_(x), y_(y), q_(q), D_(D) {
  if (q_ == 0) fail(Errc::domain, "zero denominator");
  normalize();
}

void FieldRational::normalize() {
  if (q_ < 0) {
    q_ = -q_;
    x_ = -x_;
    y_ = -y_;
  }
  i64 g = std::gcd(std::gcd(std::abs(x_), std::abs(y_)), q_);
  if (g > 1) {
    x_ /= g;
    y_ /= g;
    q_ /= g;
  }
}

FieldRational FieldRational::of(const FieldElement& e) {
  return FieldRational(e.x(), e.y(), 2, e.D());
}

FieldRational FieldRational::integer(i64 n, i64 D) { return FieldRational(n, 0, 1, D); }

bool FieldRational::is_integral() const {
  if ((2 * x_) % q_ != 0 || (2 * y_) % q_ != 0) return false;
  i64 X = 2 * x_ / q_, Y = 2 * y_ / q_;
  return mod_floor(X - Y * (D_ % 2), 2) == 0;
}

bool FieldRational::in_inv_different() const {
  // v in (1/sqrt D) O_F  <=>  v*sqrt(D) in O_F
  FieldRational w(y_ * D_, x_, q_, D_);
  return w.is_integral();
}

bool FieldRational::in_different() const {
  // v in (sqrt D) O_F  <=>  v/sqrt(D) = v*sqrt(D)/D in O_F
  FieldRational w(y_ * D_, x_, mul_ck(q_, D_), D_);
  return w.is_integral();
}

FieldElement FieldRational::to_integral() const {
  if (!is_integral()) fail(Errc::invalid_element, "element not in O_F: " + str());
  return FieldElement(2 * x_ / q_, 2 * y_ / q_, D_);
}

FieldRational FieldRational::conj() const { return FieldRational(x_, -y_, q_, D_); }

FieldRational FieldRational::operator+(const FieldRational& o) const {
  i64 g = std::gcd(q_, o.q_);
  i64 l = mul_ck(q_ / g, o.q_);
  i64 a = l / q_, b = l / o.q_;
  return FieldRational(add_ck(mul_ck(x_, a), mul_ck(o.x_, b)),
                       add_ck(mul_ck(y_, a), mul_ck(o.y_, b)), l, D_);
}

FieldRational FieldRational::operator-(const FieldRational& o) const { return *this + (-o); }

FieldRational FieldRational::operator*(const FieldRational& o) const {
  i128 nx = (i128)x_ * o.x_ + (i128)y_ * o.y_ * D_;
  i128 ny = (i128)x_ * o.y_ + (i128)o.x_ * y_;
  i128 nq = (i128)q_ * o.q_;
  i128 g = nq;
  auto gcd128 = [](i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  g = gcd128(gcd128(nx, ny), nq);
  if (g > 1) {
    nx /= g;
    ny /= g;
    nq /= g;
  }
  return FieldRational(narrow(nx), narrow(ny), narrow(nq), D_);
}

FieldRational FieldRational::operator-() const { return FieldRational(-x_, -y_, q_, D_); }

bool FieldRational::operator==(const FieldRational& o) const {
  return x_ == o.x_ && y_ == o.y_ && q_ == o.q_ && D_ == o.D_;
}

Real FieldRational::embed1() const {
  return ((Real)x_ + (Real)y_ * std::sqrt((Real)D_)) / (Real)q_;
}

Real FieldRational::embed2() const {
  return ((Real)x_ - (Real)y_ * std::sqrt((Real)D_)) / (Real)q_;
}

std::string FieldRational::str() const {
  std::ostringstream os;
  os << "(" << x_ << (y_ < 0 ? "-" : "+") << std::abs(y_) << "*sqrt" << D_ << ")/" << q_;
  return os.str();
}

SplittingType splitting_type(const QuadraticField& F, i64 p) {
  if (!is_prime(p)) fail(Errc::domain, "p must be prime");
  if (F.D() % p == 0) return SplittingType::Ramified;
  int k = kronecker(F.D(), p);
  return k == 1 ? SplittingType::Split : SplittingType::Inert;
}

namespace {

// Continued fraction of sqrt(d): returns (p, q) with p^2 - d q^2 = +-1,
// the fundamental solution (end of the first period).
std::pair<i64, i64> pell_unit(i64 d) {
  i64 a0 = isqrt(d);
  i64 P = 0, Q = 1, a = a0;
  i64 pm1 = 1, p0 = a0, qm1 = 0, q0 = 1;
  for (int k = 1; k < 20000; ++k) {
    P = a * Q - P;
    Q = (d - P * P) / Q;
    a = (a0 + P) / Q;
    // Q = 1 marks the end of the first period: the previous convergent
    // p/q satisfies p^2 - d q^2 = (-1)^period.
    if (Q == 1) return {p0, q0};
    i64 p1 = add_ck(mul_ck(a, p0), pm1);
    i64 q1 = add_ck(mul_ck(a, q0), qm1);
    pm1 = p0;
    p0 = p1;
    qm1 = q0;
    q0 = q1;
  }
  fail(Errc::nonconvergence, "continued fraction period not found");
}

}  // namespace

FieldElement fundamental_unit(const QuadraticField& F) {
  i64 d = F.d(), D = F.D();
  auto [p, q] = pell_unit(d);
  if (mod_floor(d, 4) != 1) {
    // O_F = Z[sqrt d], sqrt D = 2 sqrt d.
    return FieldElement(2 * p, q, D);
  }
  // Maximal order may contain a smaller (half-integral) unit: scan
  // x^2 - D y^2 = -+4 up to the Z[sqrt d] solution (2p, 2q).
  for (i64 y = 1; y <= 2 * q + 1; ++y) {
    i64 t = mul_ck(mul_ck(y, y), D);
    i64 x;
    if (is_square(t - 4, &x) && x > 0) return FieldElement(x, y, D);
    if (is_square(t + 4, &x)) return FieldElement(x, y, D);
  }
  return FieldElement(2 * p, 2 * q, D);
}

std::optional<FieldElement> split_generator(const QuadraticField& F, i64 p) {
  if (!is_prime(p)) fail(Errc::domain, "p must be prime");
  i64 D = F.D();
  FieldElement eps = fundamental_unit(F);
  FieldElement eps2 = eps * eps;  // totally positive, norm 1
  Real u = std::max(std::abs(eps.embed1()), std::abs(eps.embed2()));
  Real sp = std::sqrt((Real)p);
  Real u2 = u * u;

  // lambda = (x + y sqrt D)/2, x^2 - D y^2 = 4p, embeddings within the
  // unit-square band => |y| sqrt(D) = |s1 - s2| <= sqrt(p) (u^2 - u^-2).
  i64 ymax = (i64)(sp * (u2 - 1 / u2) / std::sqrt((Real)D)) + 2;
  std::vector<FieldElement> candidates;
  for (i64 y = -ymax; y <= ymax; ++y) {
    i64 t = add_ck(mul_ck(mul_ck(y, y), D), 4 * p);
    i64 x;
    if (!is_square(t, &x)) continue;
    if (x == 0) continue;
    FieldElement lam(x, y, D);
    if (!lam.totally_positive() || lam.norm() != p) continue;
    // Normalize into the band by unit squares, balancing the embeddings.
    for (int guard = 0; guard < 64; ++guard) {
      Real e1 = lam.embed1(), e2 = lam.embed2();
      if (e1 > e2 * u2 * u2) {
        // shrink embedding 1: multiply by eps^-2 = conj(eps2) (norm 1)
        lam = lam * eps2.conj();
      } else if (e2 > e1 * u2 * u2) {
        lam = lam * eps2;
      } else {
        break;
      }
    }
    candidates.push_back(lam);
  }
  if (candidates.empty()) return std::nullopt;
  auto key = [](const FieldElement& e) {
    return std::max(e.embed1(), e.embed2());
  };
  // Conjugate candidates (generators of the two primes above p) tie on the
  // larger embedding; prefer the one with sigma_1 >= sigma_2.
  std::sort(candidates.begin(), candidates.end(), [&](const FieldElement& a, const FieldElement& b) {
    Real ka = key(a), kb = key(b);
    if (std::abs(ka - kb) > 1e-12L * (1 + std::abs(ka))) return ka < kb;
    if (a.y() != b.y()) return a.y() > b.y();
    return a.x() < b.x();
  });
  candidates.erase(std::unique(candidates.begin(), candidates.end(),
                               [](const FieldElement& a, const FieldElement& b) { return a == b; }),
                   candidates.end());
  return candidates.front();
}

}  // namespace rmsplit
