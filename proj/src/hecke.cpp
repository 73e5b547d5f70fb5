#include "rmsplit/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rmsplit {

namespace {

bool finite(const Complex& c) { return std::isfinite((double)c.real()) && std::isfinite((double)c.imag()); }

// Exact sign of the first embedding (x + y sqrt D)/2.
int sign_embed1(const FieldElement& e) {
  i64 x = e.x(), y = e.y();
  if (x == 0 && y == 0) return 0;
  if (y == 0) return x > 0 ? 1 : -1;
  if (y > 0) {
    if (x >= 0) return 1;
    return ((i128)x * x < (i128)y * y * e.D()) ? 1 : -1;
  }
  if (x <= 0) return -1;
  return ((i128)x * x > (i128)y * y * e.D()) ? 1 : -1;
}

}  // namespace

PointH2::PointH2(Complex z1_, Complex z2_, Real eps_) : z1(z1_), z2(z2_), eps(eps_) {
  if (!(z1.imag() > 0) || !(z2.imag() > 0))
    fail(Errc::domain, "point must lie in H x H");
}

MatrixGL2F::MatrixGL2F(FieldRational u11, FieldRational u12, FieldRational u21, FieldRational u22)
    : e_{u11, u12, u21, u22} {}

MatrixGL2F MatrixGL2F::identity(i64 D) {
  auto one = FieldRational::one(D), zero = FieldRational::zero(D);
  return MatrixGL2F(one, zero, zero, one);
}

MatrixGL2F MatrixGL2F::translation(const FieldRational& mu) {
  i64 D = mu.D();
  return MatrixGL2F(FieldRational::one(D), mu, FieldRational::zero(D), FieldRational::one(D));
}

MatrixGL2F MatrixGL2F::unit_move(const FieldElement& unit, int n) {
  i64 nm = unit.norm();
  if (nm != 1 && nm != -1) fail(Errc::domain, "not a unit");
  FieldElement inv = unit.conj().times(nm);  // unit^{-1}
  FieldElement top = (n >= 0 ? unit : inv).pow(std::abs(n));
  FieldElement bot = (n >= 0 ? inv : unit).pow(std::abs(n));
  i64 D = unit.D();
  return MatrixGL2F(FieldRational::of(top), FieldRational::zero(D), FieldRational::zero(D),
                    FieldRational::of(bot));
}

MatrixGL2F MatrixGL2F::inversion(i64 D) {
  // (0, -1/sqrtD; sqrtD, 0): z -> -1/(D z) in both embeddings, det 1.
  return MatrixGL2F(FieldRational::zero(D), FieldRational(0, -1, D, D),
                    FieldRational(0, 2, 2, D), FieldRational::zero(D));
}

MatrixGL2F MatrixGL2F::hecke_rep(const FieldElement& lambda, i64 j) {
  i64 D = lambda.D();
  return MatrixGL2F(FieldRational::one(D), FieldRational::integer(j, D), FieldRational::zero(D),
                    FieldRational::of(lambda));
}

MatrixGL2F MatrixGL2F::hecke_rep_infinity(const FieldElement& lambda) {
  i64 D = lambda.D();
  return MatrixGL2F(FieldRational::of(lambda), FieldRational::zero(D), FieldRational::zero(D),
                    FieldRational::one(D));
}

FieldRational MatrixGL2F::det() const { return e_[0] * e_[3] - e_[1] * e_[2]; }

MatrixGL2F MatrixGL2F::operator*(const MatrixGL2F& o) const {
  return MatrixGL2F(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                    e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3]);
}

MatrixGL2F MatrixGL2F::conj() const {
  return MatrixGL2F(e_[0].conj(), e_[1].conj(), e_[2].conj(), e_[3].conj());
}

bool MatrixGL2F::in_gamma() const {
  return e_[0].is_integral() && e_[3].is_integral() && e_[1].in_inv_different() &&
         e_[2].in_different() && det() == FieldRational::one(D());
}

bool MatrixGL2F::is_identity() const {
  return e_[0] == FieldRational::one(D()) && e_[3] == FieldRational::one(D()) &&
         e_[1].is_zero() && e_[2].is_zero();
}

PointH2 moebius_act(const MatrixGL2F& g, const PointH2& z) {
  FieldRational det = g.det();
  if (!(det.embed1() > 0) || !(det.embed2() > 0))
    fail(Errc::domain, "action requires totally positive determinant");
  auto apply = [&](Real a, Real b, Real c, Real d, Complex w, Real eps) {
    Complex den = c * w + d;
    if (std::abs(den) < eps) fail(Errc::numeric, "vanishing denominator in Moebius action");
    return (a * w + b) / den;
  };
  Complex w1 = apply(g.u11().embed1(), g.u12().embed1(), g.u21().embed1(), g.u22().embed1(), z.z1,
                     z.eps);
  Complex w2 = apply(g.u11().embed2(), g.u12().embed2(), g.u21().embed2(), g.u22().embed2(), z.z2,
                     z.eps);
  if (!finite(w1) || !finite(w2)) fail(Errc::numeric, "non-finite Moebius image");
  return PointH2(w1, w2, z.eps);
}

ReduceResult reduce_fundamental(const PointH2& z, const QuadraticField& F,
                                const ReduceOptions& opt) {
  const i64 D = F.D();
  const FieldElement eps_unit = fundamental_unit(F);
  const Real log_eps = std::log(eps_unit.embed1());
  // Z-basis of the inverse different: 1/sqrt(D) and (1 + sqrt(D))/2.
  const FieldRational b1(0, 1, D, D), b2(1, 1, 2, D);
  const Real b1e1 = b1.embed1(), b1e2 = b1.embed2();
  const Real b2e1 = b2.embed1(), b2e2 = b2.embed2();
  const Real det_b = b1e1 * b2e2 - b2e1 * b1e2;

  PointH2 w = z;
  MatrixGL2F g = MatrixGL2F::identity(D);
  int moves = 0;
  auto apply = [&](const MatrixGL2F& m) {
    w = moebius_act(m, w);
    g = m * g;
    ++moves;
    if (moves > opt.max_moves) fail(Errc::nonconvergence, "reduction move cap exceeded");
  };

  const int L = std::max(1, opt.lookahead);
  for (int iter = 0; iter < opt.max_moves; ++iter) {
    // Balance (y1, y2) by diag(eps^n, eps^-n): ratio scales by eps1^{-4n}.
    Real ratio = std::log(w.z2.imag() / w.z1.imag());
    long n = std::lround(ratio / (4 * log_eps));
    if (n != 0) apply(MatrixGL2F::unit_move(eps_unit, (int)n));

    // Solve c1 b1 + c2 b2 = (-x1, -x2) in the embedding plane.
    Real t1 = -w.z1.real(), t2 = -w.z2.real();
    Real c1f = (t1 * b2e2 - t2 * b2e1) / det_b;
    Real c2f = (b1e1 * t2 - b1e2 * t1) / det_b;
    i64 c1 = (i64)std::llround(c1f), c2 = (i64)std::llround(c2f);

    // Lookahead: nearest translates, scored by D^2 |z1+mu|^2 |z2+mu'|^2.
    Real best_score = -1;
    i64 bi = 0, bj = 0;
    for (i64 di = -L; di <= L; ++di)
      for (i64 dj = -L; dj <= L; ++dj) {
        Real m1 = (Real)(c1 + di) * b1e1 + (Real)(c2 + dj) * b2e1;
        Real m2 = (Real)(c1 + di) * b1e2 + (Real)(c2 + dj) * b2e2;
        Real s = (Real)D * (Real)D * std::norm(w.z1 + m1) * std::norm(w.z2 + m2);
        if (best_score < 0 || s < best_score) {
          best_score = s;
          bi = c1 + di;
          bj = c2 + dj;
        }
      }
    if (best_score < 1 - 1e-9L) {
      if (bi != 0 || bj != 0) {
        FieldRational mu = FieldRational(mul_ck(bi, 1), 0, 1, D) * b1 +
                           FieldRational(bj, 0, 1, D) * b2;
        apply(MatrixGL2F::translation(mu));
      }
      apply(MatrixGL2F::inversion(D));
      continue;
    }
    if (c1 != 0 || c2 != 0) {
      FieldRational mu = FieldRational(c1, 0, 1, D) * b1 + FieldRational(c2, 0, 1, D) * b2;
      apply(MatrixGL2F::translation(mu));
    }
    // g is exact; a one-shot evaluation sheds the drift accumulated by the
    // incremental images that guided the moves.
    return ReduceResult{g.is_identity() ? z : moebius_act(g, z), g, moves};
  }
  fail(Errc::nonconvergence, "reduction did not stabilize");
}

std::vector<PointH2> hecke_orbit(const PointH2& z, i64 p, const FieldElement& lambda,
                                 const QuadraticField& F) {
  if (!is_prime(p)) fail(Errc::domain, "p must be prime");
  if (lambda.norm() != p || !lambda.totally_positive())
    fail(Errc::domain, "lambda must be totally positive of norm p");
  std::vector<PointH2> orbit;
  orbit.reserve(p + 1);
  for (i64 j = 0; j < p; ++j)
    orbit.push_back(reduce_fundamental(moebius_act(MatrixGL2F::hecke_rep(lambda, j), z), F).point);
  orbit.push_back(
      reduce_fundamental(moebius_act(MatrixGL2F::hecke_rep_infinity(lambda), z), F).point);
  return orbit;
}

Complex divisor_value(const PointH2& z, const ComponentMatrix& M) {
  Real g1 = M.gamma().embed1(), g2 = M.gamma().embed2();
  return (Real)M.a() * z.z1 * z.z2 + g1 * z.z1 + g2 * z.z2 + (Real)M.b();
}

Real proximity(const PointH2& z, const ComponentMatrix& M) {
  return std::abs(divisor_value(z, M)) / std::sqrt(z.height_product());
}

ComponentMatrix transport(const MatrixGL2F& U, const ComponentMatrix& M) {
  i64 D = U.D();
  FieldRational a = FieldRational::integer(M.a(), D), b = FieldRational::integer(M.b(), D);
  FieldRational gam = FieldRational::of(M.gamma());
  // W = U^t (a, gamma; gamma', b) U'
  MatrixGL2F Mq(a, gam, gam.conj(), b);
  MatrixGL2F Ut(U.u11(), U.u21(), U.u12(), U.u22());
  MatrixGL2F W = Ut * Mq * U.conj();
  if (!W.u11().is_rational_integer() || !W.u22().is_rational_integer())
    fail(Errc::invalid_element, "transport left the lattice (diagonal)");
  return ComponentMatrix(W.u11().x(), W.u22().x(), W.u12().to_integral(), M.normA());
}

NearMiss::NearMiss(i64 m_, i64 l_, FieldElement eta_, i64 p_, i64 r_, i64 normA_)
    : m(m_), l(l_), eta(eta_), p(p_), r(r_), normA(normA_) {
  if (!is_prime(p)) fail(Errc::domain, "p must be prime");
  if (r < 1 || normA < 1) fail(Errc::domain, "r and normA must be positive");
  if (m % (eta.D() * normA) != 0) fail(Errc::invalid_element, "m must be divisible by D*normA");
  i128 lhs = (i128)m * l - (i128)eta.norm();
  if (lhs != (i128)p * r * normA)
    fail(Errc::invalid_element, "near-miss invariant m*l - Nm(eta) = p*r*normA violated");
}

CMPoint cm_point(const NearMiss& n1, const NearMiss& n2) {
  if (n1.p == n2.p) fail(Errc::domain, "near misses must come from distinct primes");
  i64 D = n1.eta.D();
  QuadraticField F = QuadraticField::from_discriminant(D);
  // f(z) = (eta1 z + l1)(eta2' + m2 z) - (eta2 z + l2)(eta1' + m1 z)
  FieldElement A = n1.eta.times(n2.m) - n2.eta.times(n1.m);
  FieldElement B = F.integer(add_ck(mul_ck(n1.l, n2.m), -mul_ck(n2.l, n1.m))) +
                   n1.eta * n2.eta.conj() - n2.eta * n1.eta.conj();
  FieldElement C = n2.eta.conj().times(n1.l) - n1.eta.conj().times(n2.l);
  if (A.is_zero()) fail(Errc::degeneracy, "leading coefficient eta1*m2 - eta2*m1 vanishes");

  FieldElement disc = B * B - (A * C).times(4);
  if (sign_embed1(disc) >= 0) fail(Errc::real_roots, "intersection quadratic has real roots");

  Real a1 = A.embed1(), b1 = B.embed1(), d1 = disc.embed1();
  Complex z1((-b1) / (2 * a1), std::sqrt(-d1) / (2 * std::abs(a1)));
  Complex den = (Real)n1.m * z1 + n1.eta.embed2();
  if (std::abs(den) < 1e-14L) fail(Errc::degeneracy, "z2 denominator vanishes");
  Complex z2 = -(n1.eta.embed1() * z1 + (Real)n1.l) / den;
  if (!(z2.imag() > 0)) fail(Errc::real_roots, "intersection does not lie in H x H");
  PointH2 pt(z1, z2);
  if (proximity(pt, n1.component()) > 1e-8L || proximity(pt, n2.component()) > 1e-8L)
    fail(Errc::numeric, "reconstructed point misses a component");
  return CMPoint{pt, A, B, C};
}

SpecialPointForm special_point_form(const PointH2& z, const QuadraticField& F,
                                    const PolarizationModulus& mod, double H) {
  i64 D = F.D();
  i64 Dn = D * mod.normA;
  Real sD = F.sqrtD();
  IntMat coords;
  i64 amax = (i64)std::floor(H);
  i64 ymax = (i64)(2.0L * (Real)H / sD) + 1;
  auto det_of = [&](i64 alpha, i64 b, i64 g1, i64 g2) {
    i64 x = 2 * g1 + g2 * D, y = g2;
    i64 nm = narrow(((i128)x * x - (i128)y * y * D) / 4);
    return narrow((i128)Dn * alpha * b - nm);
  };
  for (i64 alpha = -(amax / Dn); alpha * Dn <= amax; ++alpha)
    for (i64 b = -amax; b <= amax; ++b)
      for (i64 y = -ymax; y <= ymax; ++y)
        for (i64 x = -2 * amax - 1 + mod_floor(2 * amax + 1 + y * D, 2); x <= 2 * amax + 1;
             x += 2) {
          Real e1 = ((Real)x + (Real)y * sD) / 2, e2 = ((Real)x - (Real)y * sD) / 2;
          if (std::abs(e1) > (Real)H || std::abs(e2) > (Real)H) continue;
          FieldElement gamma(x, y, D);
          ComponentMatrix M(alpha * Dn, b, gamma, mod.normA);
          if (std::abs(divisor_value(z, M)) >= z.eps) continue;
          i64 g2c = y, g1c = (x - y * D) / 2;
          coords.push_back({alpha, b, g1c, g2c});
        }
  int rk = coords.empty() ? 0 : rank_mat(coords);
  if (rk < 2) fail(Errc::not_special, "solution lattice has rank < 2");
  if (rk > 2) fail(Errc::tolerance, "solution lattice has rank > 2 (tolerance too loose)");
  IntMat basis = hnf_rows(coords);
  auto quad = [&](const std::vector<i64>& v) { return det_of(v[0], v[1], v[2], v[3]); };
  std::vector<i64> v12(4);
  for (int i = 0; i < 4; ++i) v12[i] = add_ck(basis[0][i], basis[1][i]);
  i64 qa = quad(basis[0]), qc = quad(basis[1]);
  i64 qb = add_ck(quad(v12), -add_ck(qa, qc));
  if (qa <= 0 || (i128)qb * qb - (i128)4 * qa * qc >= 0)
    fail(Errc::tolerance, "restricted form is not positive definite");
  i64 content = std::gcd(std::gcd(std::abs(qa), std::abs(qb)), std::abs(qc));
  BinaryQF prim(qa / content, qb / content, qc / content);
  IntMat gram2{{qa, qb}, {qb, qc}};
  return SpecialPointForm{reduce(prim), content, basis, gram2};
}

}  // namespace rmsplit
