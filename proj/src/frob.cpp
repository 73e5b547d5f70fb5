#include "rmsplit/frob.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

namespace rmsplit {

BigInt poly_discriminant(const std::vector<i64>& coeffs) {
  int n = (int)coeffs.size() - 1;
  if (n < 1) fail(Errc::domain, "polynomial must have positive degree");
  if (coeffs[n] == 0) fail(Errc::domain, "leading coefficient must be nonzero");
  std::vector<i64> d(n);  // derivative, ascending
  for (int i = 1; i <= n; ++i) d[i - 1] = coeffs[i] * i;
  // Sylvester matrix of f (degree n) and f' (degree n-1), size 2n-1.
  int size = 2 * n - 1;
  std::vector<std::vector<BigInt>> S(size, std::vector<BigInt>(size, 0));
  for (int row = 0; row < n - 1; ++row)
    for (int i = 0; i <= n; ++i) S[row][row + n - i] = coeffs[i];
  for (int row = 0; row < n; ++row)
    for (int i = 0; i <= n - 1; ++i) S[n - 1 + row][row + n - 1 - i] = d[i];
  // Bareiss fraction-free determinant.
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (S[k][k] == 0) {
      int piv = -1;
      for (int i = k + 1; i < size; ++i)
        if (S[i][k] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(S[k], S[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i)
      for (int j = k + 1; j < size; ++j)
        S[i][j] = (S[i][j] * S[k][k] - S[i][k] * S[k][j]) / prev;
    prev = S[k][k];
  }
  BigInt res = sign * S[size - 1][size - 1];
  BigInt disc = res / coeffs[n];
  if ((n * (n - 1) / 2) % 2) disc = -disc;
  return disc;
}

Genus2Curve::Genus2Curve(std::vector<i64> coeffs, std::string label)
    : f_(std::move(coeffs)), label_(std::move(label)) {
  while (f_.size() > 1 && f_.back() == 0) f_.pop_back();
  if (degree() != 5 && degree() != 6) fail(Errc::domain, "f must have degree 5 or 6");
  disc_ = poly_discriminant(f_);
  if (disc_ == 0) fail(Errc::domain, "f must be squarefree");
}

bool Genus2Curve::good_prime(i64 p) const {
  if (p < 3 || !is_prime(p)) return false;
  // p | lc would drop the degree of the model mod p
  return disc_ % p != 0 && f_.back() % p != 0;
}

namespace {

// Quadratic character table of F_p: chi[0] = 0, chi[t] = +-1.
std::vector<int8_t> chi_table(i64 p) {
  std::vector<int8_t> chi(p, -1);
  chi[0] = 0;
  for (i64 x = 1; x <= (p - 1) / 2; ++x) chi[(x * x) % p] = 1;
  return chi;
}

i64 count_fp(const std::vector<i64>& f, i64 p, const std::vector<int8_t>& chi) {
  int n = (int)f.size() - 1;
  std::vector<i64> fm(n + 1);
  for (int i = 0; i <= n; ++i) fm[i] = mod_floor(f[i], p);
  i64 affine = 0;
  for (i64 x = 0; x < p; ++x) {
    i64 v = 0;
    for (int i = n; i >= 0; --i) v = (v * x + fm[i]) % p;
    affine += 1 + chi[v];
  }
  i64 inf = (n == 5) ? 1 : 1 + chi[fm[n]];
  return affine + inf;
}

i64 count_fp2(const std::vector<i64>& f, i64 p, const std::vector<int8_t>& chi) {
  int n = (int)f.size() - 1;
  std::vector<i64> fm(n + 1);
  for (int i = 0; i <= n; ++i) fm[i] = mod_floor(f[i], p);
  // F_{p^2} = F_p[t]/(t^2 - c), c the smallest nonresidue; chi2 = chi o Nm.
  i64 c = 2;
  while (chi[c] != -1) ++c;
  i64 affine = 0;
  // v = 0 slice is F_p: every nonzero value of F_p is a square in F_{p^2}.
  for (i64 u = 0; u < p; ++u) {
    i64 v = 0;
    for (int i = n; i >= 0; --i) v = (v * u + fm[i]) % p;
    affine += 1 + (v == 0 ? 0 : 1);
  }
  // Frobenius pairs (u, v) and (u, -v) share the character value.
  for (i64 v = 1; v <= (p - 1) / 2; ++v) {
    for (i64 u = 0; u < p; ++u) {
      // Horner in F_p[t]/(t^2-c) at u + v t.
      i64 ra = 0, rb = 0;  // ra + rb t
      for (int i = n; i >= 0; --i) {
        i64 na = (i64)(((i128)ra * u + (i128)rb * v % p * c) % p + fm[i]) % p;
        i64 nb = (i64)(((i128)ra * v + (i128)rb * u) % p);
        ra = na;
        rb = nb;
      }
      // Nm(ra + rb t) = ra^2 - c rb^2
      i64 nm = mod_floor((i64)(((i128)ra * ra - (i128)rb * rb % p * c) % p), p);
      affine += 2 * (1 + chi[nm]);
    }
  }
  i64 inf = (n == 5) ? 1 : (fm[n] == 0 ? 0 : 2);
  return affine + inf;
}

}  // namespace

i64 point_count(const Genus2Curve& C, i64 q) {
  i64 p = q;
  bool square = false;
  i64 r;
  if (is_square(q, &r) && is_prime(r)) {
    p = r;
    square = true;
  } else if (!is_prime(q)) {
    fail(Errc::domain, "q must be p or p^2");
  }
  if (p == 2 || !C.good_prime(p)) fail(Errc::bad_prime, "bad reduction at " + std::to_string(p));
  auto chi = chi_table(p);
  return square ? count_fp2(C.coeffs(), p, chi) : count_fp(C.coeffs(), p, chi);
}

FrobeniusData frobenius_data(const Genus2Curve& C, i64 p) {
  if (p == 2 || !C.good_prime(p)) fail(Errc::bad_prime, "bad reduction at " + std::to_string(p));
  auto chi = chi_table(p);
  i64 n1 = count_fp(C.coeffs(), p, chi);
  i64 n2 = count_fp2(C.coeffs(), p, chi);
  i64 a1 = n1 - (p + 1);
  i64 num = a1 * a1 - p * p - 1 + n2;
  if (num % 2 != 0) fail(Errc::inconsistent, "power-sum identity is not integral");
  i64 a2 = num / 2;
  FrobeniusData d{p, a1, a2};
  // Weil invariants: |a1| <= 4 sqrt(p), |a2| <= 6p, and the quartic splits as
  // (x^2 - t x + p) factors with real t, |t| <= 2 sqrt(p) (all roots on |z| = sqrt p).
  if ((i128)a1 * a1 > 16 * (i128)p || std::abs(a2) > 6 * p)
    fail(Errc::inconsistent, "Weil bounds violated");
  i64 delta = d.delta();
  if (delta < 0) fail(Errc::inconsistent, "conjugate-pair quartic with negative delta");
  long double sd = std::sqrt((long double)delta);
  long double tmax = (std::abs((long double)a1) + sd) / 2;
  if (tmax > 2 * std::sqrt((long double)p) + 1e-9L)
    fail(Errc::inconsistent, "quartic roots off the Weil circle");
  return d;
}

const char* to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Bad: return "bad";
    case SplitKind::SplitRational: return "split-rational";
    case SplitKind::SplitEqual: return "split-equal";
    case SplitKind::Supersingular: return "supersingular";
    case SplitKind::OrdinaryNoSplit: return "ordinary";
    case SplitKind::NonOrdinaryNoSplit: return "nonordinary";
  }
  return "?";
}

SplitClass split_classify(const FrobeniusData& d, i64 D) {
  i64 p = d.p;
  i64 delta = d.delta();
  if (delta < 0) fail(Errc::inconsistent, "negative delta");
  SplitClass out;
  out.delta = delta;
  out.ordinary = (d.a2 % p != 0);
  double sp = std::sqrt((double)p), sd = std::sqrt((double)delta);
  out.s1 = ((double)-d.a1 - sd) / (2 * sp);
  out.s2 = ((double)-d.a1 + sd) / (2 * sp);
  i64 root = 0;
  bool square = is_square(delta, &root);
  i64 dfield = (D % 4 == 0) ? D / 4 : D;
  out.rm_consistent = delta == 0 || (squarefree_kernel(delta) == 1) ||
                      (squarefree_kernel(delta) == dfield);
  if (delta == 0) {
    out.kind = SplitKind::SplitEqual;
    out.alpha = out.beta = -d.a1 / 2;
    return out;
  }
  if (square) {
    // sqrt(delta) = a1 mod 2, so both factors are integral.
    out.kind = SplitKind::SplitRational;
    out.alpha = (-d.a1 - root) / 2;
    out.beta = (-d.a1 + root) / 2;
    return out;
  }
  // Newton polygon of x^4 + a1 x^3 + a2 x^2 + p a1 x + p^2: a single
  // slope-1/2 segment from (0,2) to (4,0) iff p | a1 and p | a2.
  if (d.a1 % p == 0 && d.a2 % p == 0) {
    out.kind = SplitKind::Supersingular;
    return out;
  }
  out.kind = out.ordinary ? SplitKind::OrdinaryNoSplit : SplitKind::NonOrdinaryNoSplit;
  return out;
}

double sato_tate_density(double s1, double s2) {
  const double pi = 3.14159265358979323846;
  if (std::abs(s1) > 2 || std::abs(s2) > 2) return 0;
  return std::sqrt(4 - s1 * s1) * std::sqrt(4 - s2 * s2) / (4 * pi * pi);
}

SatoTateSummary sato_tate_scan(const Genus2Curve& C, i64 D, i64 X, int threads) {
  if (X < 3) fail(Errc::domain, "X must be >= 3");
  SatoTateSummary sum;
  std::vector<i64> ps;
  for (i64 p : primes_upto(X))
    if (p != 2) ps.push_back(p);
  sum.events.resize(ps.size());

  int nthreads = threads > 0 ? threads : (int)std::thread::hardware_concurrency();
  nthreads = std::max(1, std::min<int>(nthreads, 16));
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= ps.size()) break;
      ScanEvent& ev = sum.events[i];
      ev.p = ps[i];
      auto t0 = std::chrono::steady_clock::now();
      if (!C.good_prime(ps[i])) {
        ev.ok = false;
        ev.reason = "bad-reduction";
      } else {
        ev.data = frobenius_data(C, ps[i]);
        ev.cls = split_classify(ev.data, D);
        ev.ok = true;
      }
      ev.timing_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  for (auto& ev : sum.events) {
    if (!ev.ok) {
      ++sum.bad;
      continue;
    }
    ++sum.good;
    ++sum.class_counts[(int)ev.cls.kind];
    sum.sum_inv_sqrt += 1.0 / std::sqrt((double)ev.p);
    if (std::abs(ev.cls.s1 - ev.cls.s2) < 1.0 / std::sqrt((double)ev.p)) ++sum.near_diagonal;
    auto bin = [](double s) {
      int b = (int)std::floor((s + 2) / 0.2);
      return std::max(0, std::min(SatoTateSummary::kBins - 1, b));
    };
    ++sum.hist[bin(ev.cls.s1)][bin(ev.cls.s2)];
  }
  return sum;
}

std::vector<RegistryEntry> load_registry(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse, "cannot open registry: " + path);
  std::vector<RegistryEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() < 3) fail(Errc::parse, "registry line needs label, coeffs, D: " + line);
    auto trim = [](std::string s) {
      size_t a = s.find_first_not_of(" \t");
      size_t b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    RegistryEntry e;
    e.label = trim(fields[0]);
    std::stringstream cs(fields[1]);
    i64 c;
    while (cs >> c) e.coeffs.push_back(c);
    e.D = std::stoll(trim(fields[2]));
    if (fields.size() > 3) e.note = trim(fields[3]);
    if (e.label.empty() || e.coeffs.size() < 6) fail(Errc::parse, "bad registry line: " + line);
    out.push_back(std::move(e));
  }
  return out;
}

const RegistryEntry* find_curve(const std::vector<RegistryEntry>& reg, const std::string& label) {
  for (auto& e : reg)
    if (e.label == label) return &e;
  return nullptr;
}

}  // namespace rmsplit
