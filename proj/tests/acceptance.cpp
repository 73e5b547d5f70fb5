// Acceptance suite: runs each criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit code 0 iff everything passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "rmsplit/scan.hpp"
#include "rmsplit/spend.hpp"

using namespace rmsplit;

namespace {

struct Criterion {
  std::string name;
  double budget_s;
  std::function<void(std::ostream&)> run;  // throws on failure
};

int failures = 0;

void check(bool cond, const std::string& what) {
  if (!cond) throw std::runtime_error(what);
}

std::string registry_path() { return std::string(RMSPLIT_DATA_DIR) + "/curves.txt"; }

IntMat random_gram(std::mt19937_64& rng, int m, i64 maxentry) {
  std::uniform_int_distribution<i64> e(-3, 3);
  while (true) {
    IntMat B(m, std::vector<i64>(m));
    for (auto& row : B)
      for (auto& x : row) x = e(rng);
    IntMat G = mat_mul(transpose(B), B);
    for (int i = 0; i < m; ++i) G[i][i] += 1;
    bool ok = true;
    for (auto& row : G)
      for (auto& x : row)
        if (std::abs(x) > maxentry) ok = false;
    if (ok) return G;
  }
}

MatrixGL2F random_gamma(const QuadraticField& F, std::mt19937_64& rng, int len) {
  std::uniform_int_distribution<int> kind(0, 2), coeff(-2, 2), upow(-1, 1);
  MatrixGL2F g = MatrixGL2F::identity(F.D());
  FieldElement eps = fundamental_unit(F);
  for (int i = 0; i < len; ++i) {
    switch (kind(rng)) {
      case 0: {
        FieldRational mu =
            FieldRational(coeff(rng), 0, 1, F.D()) * FieldRational(0, 1, F.D(), F.D()) +
            FieldRational(coeff(rng), 0, 1, F.D()) * FieldRational(1, 1, 2, F.D());
        g = MatrixGL2F::translation(mu) * g;
        break;
      }
      case 1:
        g = MatrixGL2F::unit_move(eps, upow(rng)) * g;
        break;
      default:
        g = MatrixGL2F::inversion(F.D()) * g;
        break;
    }
  }
  return g;
}

ComponentMatrix random_component(const QuadraticField& F, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> small(-4, 4);
  i64 D = F.D();
  i64 y = small(rng);
  i64 x = 2 * small(rng) + mod_floor(y * D, 2);
  return ComponentMatrix(D * small(rng), small(rng), FieldElement(x, y, D));
}

PointH2 random_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> xs(-2.0, 2.0), ys(0.3, 3.0);
  return PointH2(Complex((Real)xs(rng), (Real)ys(rng)), Complex((Real)xs(rng), (Real)ys(rng)));
}

// 1. Class numbers h(-4)=1, h(-20)=2, h(-23)=3, h(-163)=1.
void crit_class_numbers(std::ostream& os) {
  check(class_number(-4) == 1, "h(-4) != 1");
  check(class_number(-20) == 2, "h(-20) != 2");
  check(class_number(-23) == 3, "h(-23) != 3");
  check(class_number(-163) == 1, "h(-163) != 1");
  os << "h(-4)=1 h(-20)=2 h(-23)=3 h(-163)=1";
}

// 2. Z^2 count at N=25 is 81; Schmidt bound with frozen c_m on 200 random
//    Gram matrices of rank <= 4, entries <= 20, N <= 10^4.
void crit_lattice_counting(std::ostream& os) {
  QuadLattice z2(identity_mat(2));
  check(count_short(z2, 25).count == 81, "Z^2 count at 25 is not 81");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> rank(1, 4);
  std::uniform_int_distribution<i64> Ns(0, 10000);
  for (int t = 0; t < 200; ++t) {
    int m = rank(rng);
    QuadLattice L(random_gram(rng, m, 20));
    i64 N = Ns(rng);
    auto sc = count_short(L, N);
    check((double)sc.count <= sc.bound, "Schmidt bound violated");
  }
  os << "Z^2@25=81, 200 random Gram matrices within the frozen Schmidt bound";
}

// 3. Hecke orbits: cardinality p+1 for p in {11,19,29,31,41} over D=5,
//    pairwise distinct at 1e-8 for a generic base point.
void crit_hecke_orbits(std::ostream& os) {
  QuadraticField F(5);
  PointH2 base(Complex(0.3L, 1.1L), Complex(-0.2L, 0.9L));
  for (i64 p : {11LL, 19LL, 29LL, 31LL, 41LL}) {
    auto lam = split_generator(F, p);
    check(lam.has_value(), "no split generator at " + std::to_string(p));
    auto orbit = hecke_orbit(base, p, *lam, F);
    check((i64)orbit.size() == p + 1, "orbit size != p+1 at " + std::to_string(p));
    for (size_t i = 0; i < orbit.size(); ++i)
      for (size_t j = i + 1; j < orbit.size(); ++j) {
        bool same = std::abs(orbit[i].z1 - orbit[j].z1) < 1e-8L &&
                    std::abs(orbit[i].z2 - orbit[j].z2) < 1e-8L;
        check(!same, "orbit points collide at p=" + std::to_string(p));
      }
  }
  os << "orbits of size p+1, pairwise distinct at 1e-8, for p in {11,19,29,31,41}";
}

// 4. Transport identity: exact det multiplicativity on 1000 random (U, M);
//    proximity transport-compatibility within 1e-9 on 500 instances.
void crit_transport(std::ostream& os) {
  QuadraticField F(5);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    auto U = random_gamma(F, rng, 4);
    auto M = random_component(F, rng);
    auto W = transport(U, M);
    FieldRational d = U.det();
    FieldRational nm = d * d.conj();
    check(nm.is_rational_integer(), "Nm(det U) not integral");
    check(W.det() == nm.x() * M.det(), "det transport identity violated");
  }
  for (int i = 0; i < 500; ++i) {
    auto U = random_gamma(F, rng, 4);
    auto M = random_component(F, rng);
    auto z = random_point(rng);
    Real lhs = proximity(moebius_act(U, z), M);
    Real rhs = proximity(z, transport(U, M));
    check(std::abs(lhs - rhs) < 1e-9L * (1 + std::abs(lhs)),
          "proximity transport compatibility violated");
  }
  os << "det((U')^t M U) = Nm(det U) det M on 1000 draws; proximity compatible on 500";
}

// 5. Frobenius at p=3 for y^2=x^5+1 is (0,0), supersingular;
//    split_classify((-3,12,5)) = SplitRational(1,2); ((-4,14,5)) = SplitEqual.
void crit_frobenius(std::ostream& os) {
  Genus2Curve C({1, 0, 0, 0, 0, 1}, "x5p1");
  auto d3 = frobenius_data(C, 3);
  check(d3.a1 == 0 && d3.a2 == 0, "(a1,a2) != (0,0) at p=3");
  auto cls = split_classify(d3, 5);
  check(cls.kind == SplitKind::Supersingular, "p=3 not classified supersingular");
  auto c1 = split_classify(FrobeniusData{5, -3, 12}, 5);
  check(c1.kind == SplitKind::SplitRational && c1.alpha == 1 && c1.beta == 2,
        "(-3,12,5) not SplitRational(1,2)");
  auto c2 = split_classify(FrobeniusData{5, -4, 14}, 5);
  check(c2.kind == SplitKind::SplitEqual, "(-4,14,5) not SplitEqual");
  os << "(y^2=x^5+1, p=3) -> (0,0) supersingular; classifier matches both examples";
}

// 6. Sato-Tate scan of y^2=x^5+1 to 2000: Weil bounds, the near-diagonal
//    implication |s1-s2| < 1/sqrt(p) => delta = 0 exactly, positive counts.
void crit_sato_tate(std::ostream& os) {
  Genus2Curve C({1, 0, 0, 0, 0, 1}, "x5p1");
  auto sum = sato_tate_scan(C, 5, 2000);
  for (auto& ev : sum.events) {
    if (!ev.ok) continue;
    check((i128)ev.data.a1 * ev.data.a1 <= 16 * (i128)ev.p, "Weil bound on a1 violated");
    check(std::abs(ev.data.a2) <= 6 * ev.p, "Weil bound on a2 violated");
    check(std::abs(ev.cls.s1) <= 2 + 1e-9 && std::abs(ev.cls.s2) <= 2 + 1e-9,
          "s-values outside [-2,2]");
    bool near = std::abs(ev.cls.s1 - ev.cls.s2) < 1.0 / std::sqrt((double)ev.p);
    check(near == (ev.cls.delta == 0), "near-diagonal event without delta=0");
  }
  i64 split_like = sum.class_counts[(int)SplitKind::SplitRational] +
                   sum.class_counts[(int)SplitKind::SplitEqual];
  check(split_like > 0, "no split-class events");
  check(sum.class_counts[(int)SplitKind::Supersingular] > 0, "no supersingular events");
  check(sum.class_counts[(int)SplitKind::OrdinaryNoSplit] > 0, "no ordinary events");
  os << "scan to 2000: " << sum.good << " primes, split-like " << split_like << ", supersingular "
     << sum.class_counts[(int)SplitKind::Supersingular] << ", ordinary "
     << sum.class_counts[(int)SplitKind::OrdinaryNoSplit];
}

// 7. HZ audit: predicate vs witness for D in {5,8,13}, r <= 60;
//    quaternion_ramified_primes(5,-10) = {2,5}; compactness examples.
void crit_hz_audit(std::ostream& os) {
  for (i64 d : {5, 2, 13}) {
    QuadraticField F(d);
    for (i64 r = 1; r <= 60; ++r) {
      bool pred = hz_nonempty(r, F);
      bool witness = !enumerate_components(r, F, {}, 10.0 * (double)r).empty();
      check(pred == witness, "hz_nonempty mismatch at D=" + std::to_string(F.D()) +
                                 " r=" + std::to_string(r));
      check(quaternion_ramified_primes(F.D(), -r).size() % 2 == 0, "odd ramification set");
    }
  }
  check(quaternion_ramified_primes(5, -10) == std::set<i64>{2, 5},
        "quaternion_ramified_primes(5,-10) != {2,5}");
  QuadraticField F5(5);
  check(hz_is_compact(10, F5), "T(10) should be compact over D=5");
  check(!hz_is_compact(11, F5), "T(11) should not be compact");
  check(!hz_is_compact(4, F5), "T(4) should not be compact");
  os << "predicate = witness for D in {5,8,13}, r <= 60; ramification and compactness examples";
}

// 8. Filtration model: ell M_n within M_{n+e_v}, discriminant ratio, frozen
//    minima product bound, mu_i step bound, on 100 synthetic models;
//    confinement enumeration whenever the premise holds.
void crit_filtration(std::ostream& os) {
  std::mt19937_64 rng(77);
  const i64 ells[3] = {2, 3, 5};
  int confinements = 0;
  for (int t = 0; t < 100; ++t) {
    int m = 3 + (int)(rng() % 2);
    IntMat G = random_gram(rng, m, 12);
    IntMat Lambda;
    int mp = (int)(rng() % 3) % std::min(3, m);
    if (mp >= 1) Lambda.push_back({1, 0, 0, 0});
    if (mp >= 2) Lambda.push_back({0, 1, 0, 0});
    for (auto& row : Lambda) row.resize(m);
    i64 ell = ells[rng() % 3];
    FiltrationModel model(QuadLattice(G), Lambda, ell, 1, 1);
    int n = 1 + (int)(rng() % 3);
    auto Mn = filtration_lattice(model, n);
    auto Mx = filtration_lattice(model, n + 1);
    auto qn = successive_minima_squared(Mn);
    auto qx = successive_minima_squared(Mx);
    for (int i = 0; i < m; ++i)
      check(qx[i] <= ell * ell * qn[i], "mu_i step bound violated");
    for (int j = 1; j <= m; ++j)
      check(minima_growth_check(model, n, j), "minima growth check failed");
  }
  // confinement on saturated rank-2 sublattices of Z^4-like lattices
  std::mt19937_64 rng2(78);
  int attempts = 0;
  while (confinements < 25 && ++attempts < 4000) {
    IntMat G = random_gram(rng2, 4, 12);
    QuadLattice M(G);
    std::uniform_int_distribution<i64> e(-2, 2);
    IntMat P(2, std::vector<i64>(4));
    for (auto& row : P)
      for (auto& x : row) x = e(rng2);
    auto sm = smith_diagonal(P);
    if (sm.size() != 2 || sm[0] != 1 || sm[1] != 1) continue;
    i64 N = 20 + (i64)(rng2() % 30);
    auto cs = containment_scale(M, P);
    i64 ell = 2;
    int k = 1;
    i128 lhs = 4;
    i128 rhs = (i128)cs.scale * cs.scale;
    for (int i = 0; i < 4; ++i) rhs *= cs.disc_P;
    rhs *= N;
    while (lhs <= rhs && k < 25) {
      ++k;
      lhs *= 4;
    }
    if (k >= 25) continue;
    auto repc = orthogonal_split_confinement(M, P, k, ell, N);
    check(repc.premise, "confinement premise lost");
    check(repc.confined, "confinement enumeration failed");
    ++confinements;
  }
  check(confinements >= 25, "not enough confinement instances");
  os << "100 synthetic models pass growth/step/discriminant checks; " << confinements
     << " confinement enumerations";
}

// 9. CM reconstruction: 50 plant-and-recover instances within 1e-6;
//    degenerate leading coefficient raises the specified error.
void crit_cm_reconstruction(std::ostream& os) {
  QuadraticField F(5);
  i64 D = 5;
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<i64> es(-3, 3);
  int done = 0, attempts = 0;
  while (done < 50 && ++attempts < 20000) {
    i64 r = 1 + (i64)(rng() % 4);
    auto mk = [&](i64 p) -> std::optional<NearMiss> {
      for (int tries = 0; tries < 100; ++tries) {
        i64 y = es(rng);
        i64 x = 2 * es(rng) + mod_floor(y * D, 2);
        FieldElement eta(x, y, D);
        i64 m = D * (1 + (i64)(rng() % 3)) * ((rng() % 2) ? 1 : -1);
        i64 num = p * r + eta.norm();
        if (num % m != 0) continue;
        return NearMiss(m, num / m, eta, p, r);
      }
      return std::nullopt;
    };
    auto n1 = mk(5), n2 = mk(7);
    if (!n1 || !n2) continue;
    std::optional<CMPoint> cm;
    try {
      cm = cm_point(*n1, *n2);
    } catch (const Error&) {
      continue;
    }
    ++done;
    check(proximity(cm->point, n1->component()) < 1e-8L, "cm point off component 1");
    check(proximity(cm->point, n2->component()) < 1e-8L, "cm point off component 2");
    // independent Newton polish from a 1e-9-perturbed start returns the point
    auto fz1 = [&](Complex z1) {
      return -(n1->eta.embed1() * z1 + (Real)n1->l) / ((Real)n1->m * z1 + n1->eta.embed2());
    };
    auto h = [&](Complex z1) {
      Complex z2 = fz1(z1);
      return (Real)n2->m * z1 * z2 + n2->eta.embed1() * z1 + n2->eta.embed2() * z2 + (Real)n2->l;
    };
    Complex w = cm->point.z1 + Complex(7e-10L, -4e-10L);
    for (int it = 0; it < 50; ++it) {
      Complex der = (h(w + Complex(0, 1e-7L)) - h(w - Complex(0, 1e-7L))) / Complex(0, 2e-7L);
      if (std::abs(der) < 1e-18L) break;
      w -= h(w) / der;
    }
    check(std::abs(w - cm->point.z1) < 1e-6L, "plant-and-recover drift beyond 1e-6");
  }
  check(done >= 50, "not enough cm instances");
  // degeneracy: eta1 m2 = eta2 m1
  NearMiss d1(5, 2, F.sqrtD_element(), 3, 5);
  NearMiss d2(5, 6, F.sqrtD_element(), 7, 5);
  bool degraised = false;
  try {
    cm_point(d1, d2);
  } catch (const Error& e) {
    degraised = e.code() == Errc::degeneracy;
  }
  check(degraised, "degeneracy error not raised");
  os << done << " plant-and-recover instances within 1e-6; degeneracy error raised";
}

// 10. Determinism: identical config + seed give byte-identical outputs.
void crit_determinism(std::ostream& os) {
  for (auto mode : {ScanMode::SatoTate, ScanMode::HeckeNear, ScanMode::LatticeBench,
                    ScanMode::HZAudit}) {
    ScanConfig cfg;
    cfg.registry_path = registry_path();
    cfg.mode = mode;
    cfg.nmin = (mode == ScanMode::HZAudit) ? 1 : 3;
    cfg.nmax = (mode == ScanMode::HeckeNear) ? 31 : 50;
    cfg.seed = 7;
    std::ostringstream a, b, ja, jb;
    write_records_csv(a, run_scan(cfg));
    write_records_csv(b, run_scan(cfg));
    check(a.str() == b.str(), std::string("CSV bytes differ for ") + to_string(mode));
    write_records_json(ja, run_scan(cfg));
    write_records_json(jb, run_scan(cfg));
    check(ja.str() == jb.str(), std::string("JSON bytes differ for ") + to_string(mode));
  }
  os << "byte-identical CSV and JSON for all four modes under a fixed seed";
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"1 class numbers", 1.0, crit_class_numbers},
      {"2 lattice counting + Schmidt bound", 30.0, crit_lattice_counting},
      {"3 Hecke orbit cardinality", 5.0, crit_hecke_orbits},
      {"4 transport identities", 10.0, crit_transport},
      {"5 Frobenius examples", 1.0, crit_frobenius},
      {"6 Sato-Tate scan to 2000", 120.0, crit_sato_tate},
      {"7 HZ audit", 10.0, crit_hz_audit},
      {"8 filtration model", 30.0, crit_filtration},
      {"9 CM reconstruction", 10.0, crit_cm_reconstruction},
      {"10 determinism", 60.0, crit_determinism},
  };
  for (auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream note;
    bool ok = true;
    std::string err;
    try {
      c.run(note);
    } catch (const std::exception& e) {
      ok = false;
      err = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      ok = false;
      if (err.empty()) err = "time budget exceeded";
    }
    std::printf("[%s] %s (%.2fs / budget %.0fs): %s\n", ok ? "PASS" : "FAIL", c.name.c_str(),
                secs, c.budget_s, ok ? note.str().c_str() : err.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
