#include "rmsplit/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rmsplit/spend.hpp"

namespace rmsplit {

ScanMode scan_mode_from_string(const std::string& s) {
  if (s == "satotate") return ScanMode::SatoTate;
  if (s == "heckenear") return ScanMode::HeckeNear;
  if (s == "lattice-bench" || s == "lattice") return ScanMode::LatticeBench;
  if (s == "hz-audit" || s == "hzaudit") return ScanMode::HZAudit;
  fail(Errc::parse, "unknown scan mode: " + s);
}

const char* to_string(ScanMode m) {
  switch (m) {
    case ScanMode::SatoTate: return "satotate";
    case ScanMode::HeckeNear: return "heckenear";
    case ScanMode::LatticeBench: return "lattice-bench";
    case ScanMode::HZAudit: return "hz-audit";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

namespace {

std::vector<ScanRecord> scan_satotate(const ScanConfig& cfg) {
  auto registry = load_registry(cfg.registry_path);
  const RegistryEntry* entry = find_curve(registry, cfg.curve_label);
  if (!entry) fail(Errc::parse, "unknown curve label: " + cfg.curve_label);
  Genus2Curve curve(entry->coeffs, entry->label);
  std::vector<ScanRecord> out;
  if (cfg.nmax < cfg.nmin || cfg.nmax < 3) return out;
  SatoTateSummary sum = sato_tate_scan(curve, cfg.D, cfg.nmax, cfg.threads);
  for (auto& ev : sum.events) {
    if (ev.p < cfg.nmin) continue;
    ScanRecord rec;
    rec.p = ev.p;
    rec.mode = "satotate";
    rec.timing_ms = ev.timing_ms;
    if (!ev.ok) {
      rec.status = "skip:" + ev.reason;
      rec.cls = "-";
    } else {
      rec.a1 = ev.data.a1;
      rec.a2 = ev.data.a2;
      rec.s1 = ev.cls.s1;
      rec.s2 = ev.cls.s2;
      rec.cls = to_string(ev.cls.kind);
      rec.status = "ok";
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ScanRecord> scan_heckenear(const ScanConfig& cfg) {
  QuadraticField F(cfg.D % 4 == 0 ? cfg.D / 4 : cfg.D);
  std::vector<ScanRecord> out;
  if (cfg.nmax < cfg.nmin) return out;
  // Smallest compact divisor T(qD), q the least inert prime.
  auto family = compact_family(F, 50);
  if (family.empty()) fail(Errc::domain, "no inert prime below 50");
  i64 r = family.front();
  auto components = enumerate_components(r, F, {}, cfg.height_mult * (double)r);
  PointH2 base(Complex((Real)cfg.base_x1, (Real)cfg.base_y1),
               Complex((Real)cfg.base_x2, (Real)cfg.base_y2));
  std::vector<i64> ps;
  for (i64 p : primes_upto(cfg.nmax))
    if (p >= cfg.nmin) ps.push_back(p);
  out.resize(ps.size());
  // work pool over primes; records merged in prime order by index
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= ps.size()) break;
      i64 p = ps[i];
      ScanRecord& rec = out[i];
      rec.p = p;
      rec.mode = "heckenear";
      auto t0 = std::chrono::steady_clock::now();
      if (splitting_type(F, p) != SplittingType::Split) {
        rec.status = "skip:not-split";
        continue;
      }
      auto lambda = split_generator(F, p);
      if (!lambda) {
        rec.status = "skip:no-split-generator";
        continue;
      }
      try {
        auto orbit = hecke_orbit(base, p, *lambda, F);
        double minprox = 0, neglog = 0;
        bool first = true;
        for (auto& pt : orbit) {
          Real best = -1;
          for (auto& M : components) {
            Real d = proximity(pt, M);
            if (best < 0 || d < best) best = d;
          }
          double bd = (double)best;
          if (first || bd < minprox) minprox = bd;
          first = false;
          neglog += -std::log(std::max(bd, 1e-300));
        }
        rec.min_proximity = minprox;
        rec.neglog_sum = neglog;
        double thresh = cfg.epsilon * (double)p * std::log((double)p);
        rec.status = (neglog >= thresh) ? "flag:arch-exceed" : "ok";
        rec.cls = "-";
      } catch (const Error& e) {
        rec.status = std::string("skip:") + e.what();
      }
      rec.timing_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
    }
  };
  int nthreads = cfg.threads > 0 ? cfg.threads : (int)std::thread::hardware_concurrency();
  nthreads = std::max(1, std::min(nthreads, 16));
  std::vector<std::thread> pool;
  for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

// Deterministic synthetic filtration model for a given seed and prime.
FiltrationModel synthetic_model(std::uint64_t seed, i64 p) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + (std::uint64_t)p);
  std::uniform_int_distribution<int> entry(-2, 2);
  std::uniform_int_distribution<int> elldist(0, 2);
  const i64 ells[3] = {2, 3, 5};
  i64 ell = ells[elldist(rng)];
  int m = 4;
  IntMat B(m, std::vector<i64>(m));
  while (true) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) B[i][j] = entry(rng);
    if (det_mat(B) != 0) break;
  }
  IntMat G = mat_mul(transpose(B), B);
  for (int i = 0; i < m; ++i) G[i][i] += 1;
  std::uniform_int_distribution<int> mp(0, 1);
  IntMat Lambda;
  if (mp(rng)) Lambda.push_back({1, 0, 0, 0});
  return FiltrationModel(QuadLattice(G), Lambda, ell, 1, 1);
}

std::vector<ScanRecord> scan_lattice(const ScanConfig& cfg) {
  std::vector<ScanRecord> out;
  if (cfg.nmax < cfg.nmin) return out;
  for (i64 p : primes_upto(cfg.nmax)) {
    if (p < cfg.nmin) continue;
    ScanRecord rec;
    rec.p = p;
    rec.mode = "lattice-bench";
    auto t0 = std::chrono::steady_clock::now();
    FiltrationModel model = synthetic_model(cfg.seed, p);
    double N = (double)p;
    i64 depth_equi = (i64)std::ceil(3.0 * model.e_v * std::log(std::log(N)));
    i64 depth_best = (i64)std::ceil(model.e_v * std::log(N) / std::log((double)model.ell));
    i64 n = model.n0 + std::max<i64>(0, std::min<i64>(depth_best, 8)) * model.e_v;
    QuadLattice Mn = filtration_lattice(model, (int)n);
    ShortCount sc = count_short(Mn, p);
    rec.a1 = sc.count;
    rec.a2 = model.m_prime();
    rec.s1 = sc.bound;
    rec.s2 = (double)depth_equi;
    rec.depth = depth_best;
    rec.cls = "ell=" + std::to_string(model.ell);
    rec.status = ((double)sc.count >= cfg.epsilon * (double)p) ? "flag:count-exceed" : "ok";
    rec.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<ScanRecord> scan_hzaudit(const ScanConfig& cfg) {
  QuadraticField F(cfg.D % 4 == 0 ? cfg.D / 4 : cfg.D);
  std::vector<ScanRecord> out;
  for (i64 r = std::max<i64>(1, cfg.nmin); r <= cfg.nmax; ++r) {
    ScanRecord rec;
    rec.p = r;
    rec.mode = "hz-audit";
    auto t0 = std::chrono::steady_clock::now();
    bool pred = hz_nonempty(r, F);
    auto witnesses = enumerate_components(r, F, {}, cfg.height_mult * (double)r);
    rec.a1 = pred ? 1 : 0;
    rec.a2 = (i64)witnesses.size();
    rec.cls = hz_is_compact(r, F) ? "compact" : "noncompact";
    auto ram = quaternion_ramified_primes(F.D(), -r);
    rec.depth = (i64)ram.size();
    bool agree = pred == !witnesses.empty();
    bool even = ram.size() % 2 == 0;
    rec.status = (agree && even) ? "ok" : "flag:mismatch";
    rec.timing_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<ScanRecord> run_scan(const ScanConfig& cfg) {
  switch (cfg.mode) {
    case ScanMode::SatoTate: return scan_satotate(cfg);
    case ScanMode::HeckeNear: return scan_heckenear(cfg);
    case ScanMode::LatticeBench: return scan_lattice(cfg);
    case ScanMode::HZAudit: return scan_hzaudit(cfg);
  }
  fail(Errc::parse, "invalid mode");
}

void write_records_csv(std::ostream& os, const std::vector<ScanRecord>& records) {
  os << "p,mode,a1,a2,s1,s2,class,min_proximity,neglog_sum,depth,status\n";
  for (auto& r : records) {
    os << r.p << ',' << r.mode << ',' << r.a1 << ',' << r.a2 << ',' << format_double(r.s1) << ','
       << format_double(r.s2) << ',' << r.cls << ',' << format_double(r.min_proximity) << ','
       << format_double(r.neglog_sum) << ',' << r.depth << ',' << r.status << '\n';
  }
}

void write_records_json(std::ostream& os, const std::vector<ScanRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (auto& r : records) {
    nlohmann::ordered_json o;
    o["p"] = r.p;
    o["mode"] = r.mode;
    o["a1"] = r.a1;
    o["a2"] = r.a2;
    o["s1"] = format_double(r.s1);
    o["s2"] = format_double(r.s2);
    o["class"] = r.cls;
    o["min_proximity"] = format_double(r.min_proximity);
    o["neglog_sum"] = format_double(r.neglog_sum);
    o["depth"] = r.depth;
    o["status"] = r.status;
    arr.push_back(std::move(o));
  }
  os << arr.dump(2) << '\n';
}

std::vector<ScanRecord> read_records_csv(std::istream& is) {
  std::vector<ScanRecord> out;
  std::string line;
  if (!std::getline(is, line)) return out;
  if (line.rfind("p,mode,", 0) != 0) fail(Errc::parse, "missing CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) f.push_back(field);
    if (f.size() != 11) fail(Errc::parse, "bad CSV row: " + line);
    ScanRecord r;
    r.p = std::stoll(f[0]);
    r.mode = f[1];
    r.a1 = std::stoll(f[2]);
    r.a2 = std::stoll(f[3]);
    r.s1 = std::stod(f[4]);
    r.s2 = std::stod(f[5]);
    r.cls = f[6];
    r.min_proximity = std::stod(f[7]);
    r.neglog_sum = std::stod(f[8]);
    r.depth = std::stoll(f[9]);
    r.status = f[10];
    out.push_back(std::move(r));
  }
  return out;
}

std::string report(const std::vector<ScanRecord>& records, const ScanConfig& cfg) {
  std::ostringstream os;
  os << "# scan report\n";
  os << "mode=" << to_string(cfg.mode) << " D=" << cfg.D << " range=[" << cfg.nmin << ","
     << cfg.nmax << "] epsilon=" << format_double(cfg.epsilon) << " seed=" << cfg.seed << "\n\n";

  os << "## status counts\n";
  os << "status,count\n";
  std::vector<std::pair<std::string, i64>> statuses;
  for (auto& r : records) {
    bool found = false;
    for (auto& s : statuses)
      if (s.first == r.status) {
        ++s.second;
        found = true;
      }
    if (!found) statuses.push_back({r.status, 1});
  }
  std::sort(statuses.begin(), statuses.end());
  for (auto& s : statuses) os << s.first << ',' << s.second << '\n';
  os << '\n';

  os << "## class counts vs sum 1/sqrt(p)\n";
  os << "class,count,sum_inv_sqrt_p\n";
  std::vector<std::pair<std::string, std::pair<i64, double>>> classes;
  for (auto& r : records) {
    if (r.status.rfind("skip", 0) == 0) continue;
    bool found = false;
    for (auto& c : classes)
      if (c.first == r.cls) {
        ++c.second.first;
        c.second.second += 1.0 / std::sqrt((double)r.p);
        found = true;
      }
    if (!found) classes.push_back({r.cls, {1, 1.0 / std::sqrt((double)r.p)}});
  }
  std::sort(classes.begin(), classes.end());
  for (auto& c : classes)
    os << c.first << ',' << c.second.first << ',' << format_double(c.second.second) << '\n';
  os << '\n';

  os << "## epsilon threshold\n";
  os << "flagged,total,fraction\n";
  i64 flagged = 0, total = 0;
  for (auto& r : records) {
    if (r.status.rfind("skip", 0) == 0) continue;
    ++total;
    if (r.status.rfind("flag", 0) == 0) ++flagged;
  }
  os << flagged << ',' << total << ','
     << format_double(total ? (double)flagged / (double)total : 0.0) << "\n\n";

  os << "## s-value histogram (20x20 on [-2,2]^2)\n";
  os << "bin_s1,bin_s2,count,model_density\n";
  if (cfg.mode == ScanMode::SatoTate) {
    i64 hist[20][20] = {};
    for (auto& r : records) {
      if (r.status != "ok") continue;
      auto bin = [](double s) {
        int b = (int)std::floor((s + 2) / 0.2);
        return std::max(0, std::min(19, b));
      };
      ++hist[bin(r.s1)][bin(r.s2)];
    }
    for (int i = 0; i < 20; ++i)
      for (int j = 0; j < 20; ++j) {
        if (hist[i][j] == 0) continue;
        double c1 = -2 + 0.2 * (i + 0.5), c2 = -2 + 0.2 * (j + 0.5);
        os << i << ',' << j << ',' << hist[i][j] << ','
           << format_double(sato_tate_density(c1, c2)) << '\n';
      }
  }
  os << '\n';

  os << "## per-prime minima (heckenear)\n";
  os << "p,min_proximity,neglog_sum\n";
  if (cfg.mode == ScanMode::HeckeNear) {
    for (auto& r : records) {
      if (r.status.rfind("skip", 0) == 0) continue;
      os << r.p << ',' << format_double(r.min_proximity) << ',' << format_double(r.neglog_sum)
         << '\n';
    }
  }
  return os.str();
}

}  // namespace rmsplit
