#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "rmsplit/intmath.hpp"

namespace rmsplit {

using BigInt = boost::multiprecision::cpp_int;

// Genus-2 model y^2 = f(x), deg f in {5, 6}, f squarefree over Q.
class Genus2Curve {
 public:
  explicit Genus2Curve(std::vector<i64> coeffs_ascending, std::string label = "");

  int degree() const { return (int)f_.size() - 1; }
  const std::vector<i64>& coeffs() const { return f_; }
  const std::string& label() const { return label_; }
  const BigInt& disc() const { return disc_; }

  // Good reduction: odd p not dividing 2*disc(f).
  bool good_prime(i64 p) const;

 private:
  std::vector<i64> f_;
  std::string label_;
  BigInt disc_;
};

// Exact discriminant of an integer polynomial (Sylvester resultant of f, f').
BigInt poly_discriminant(const std::vector<i64>& coeffs_ascending);

// #C(F_q) of the smooth model, q = p or p^2, p odd of good reduction.
i64 point_count(const Genus2Curve& C, i64 q);

// Frobenius quartic x^4 + a1 x^3 + a2 x^2 + p a1 x + p^2.
struct FrobeniusData {
  i64 p;
  i64 a1;
  i64 a2;

  i64 delta() const { return a1 * a1 - 4 * (a2 - 2 * p); }
};

FrobeniusData frobenius_data(const Genus2Curve& C, i64 p);

enum class SplitKind {
  Bad,
  SplitRational,        // quartic = (x^2 - alpha x + p)(x^2 - beta x + p) over Z
  SplitEqual,           // delta = 0, s1 = s2
  Supersingular,        // Newton polygon a single slope-1/2 segment
  OrdinaryNoSplit,      // p does not divide a2, no split detected
  NonOrdinaryNoSplit,   // p-rank <= 1, no split detected
};

const char* to_string(SplitKind k);

// Base-field split evidence from (a1, a2): rational factorization of the
// quartic plus the delta = 0 equality case.  Geometric splitting beyond the
// base field is not decidable from (a1, a2) alone.
struct SplitClass {
  SplitKind kind;
  i64 alpha = 0, beta = 0;  // SplitRational witnesses, alpha <= beta
  double s1 = 0, s2 = 0;    // normalized eigenvalue traces, s1 <= s2
  i64 delta = 0;
  bool ordinary = false;       // p does not divide a2
  bool rm_consistent = false;  // Q(sqrt(delta)) within F: delta = m^2 or d*m^2
};

SplitClass split_classify(const FrobeniusData& data, i64 D);

struct ScanEvent {
  i64 p = 0;
  bool ok = false;
  std::string reason;  // set when skipped
  FrobeniusData data{0, 0, 0};
  SplitClass cls{};
  double timing_ms = 0;
};

struct SatoTateSummary {
  std::vector<ScanEvent> events;  // one per odd prime <= X, ascending
  i64 class_counts[6] = {0, 0, 0, 0, 0, 0};
  double sum_inv_sqrt = 0;  // sum of 1/sqrt(p) over good primes
  i64 near_diagonal = 0;    // #{p : |s1 - s2| < 1/sqrt(p)}
  static constexpr int kBins = 20;
  i64 hist[kBins][kBins] = {};
  i64 good = 0, bad = 0;
};

// Events for all odd primes <= X; bad primes recorded as skips.
SatoTateSummary sato_tate_scan(const Genus2Curve& C, i64 D, i64 X, int threads = 0);

// Normalized product semicircle density (1/(4 pi^2)) sqrt(4-s1^2) sqrt(4-s2^2).
double sato_tate_density(double s1, double s2);

struct RegistryEntry {
  std::string label;
  std::vector<i64> coeffs;
  i64 D;
  std::string note;
};

// Plain-text registry: "label, coefficients of f (ascending), D, note".
std::vector<RegistryEntry> load_registry(const std::string& path);
const RegistryEntry* find_curve(const std::vector<RegistryEntry>& reg, const std::string& label);

}  // namespace rmsplit
