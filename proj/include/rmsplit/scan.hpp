#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rmsplit/frob.hpp"
#include "rmsplit/hecke.hpp"

namespace rmsplit {

enum class ScanMode { SatoTate, HeckeNear, LatticeBench, HZAudit };

ScanMode scan_mode_from_string(const std::string& s);
const char* to_string(ScanMode m);

struct ScanConfig {
  ScanMode mode = ScanMode::SatoTate;
  i64 D = 5;
  std::string curve_label = "x5p1";
  std::string registry_path;
  i64 nmin = 3;
  i64 nmax = 100;
  double epsilon = 0.1;
  std::uint64_t seed = 1;
  std::string out_path;        // empty: stdout
  std::string format = "csv";  // csv | json
  double height_mult = 10.0;   // enumeration height H = height_mult * r
  double base_x1 = 0.3, base_y1 = 1.1;   // heckenear base point
  double base_x2 = -0.2, base_y2 = 0.9;
  int threads = 0;
};

// One record per processed prime (or per r in hz-audit mode), ascending.
// Column meanings by mode are documented in the README; `timing_ms` is kept
// in memory only and never serialized (outputs are byte-deterministic).
struct ScanRecord {
  i64 p = 0;
  std::string mode;
  i64 a1 = 0;
  i64 a2 = 0;
  double s1 = 0;
  double s2 = 0;
  std::string cls = "-";
  double min_proximity = 0;
  double neglog_sum = 0;
  i64 depth = 0;
  std::string status = "ok";
  double timing_ms = 0;
};

std::vector<ScanRecord> run_scan(const ScanConfig& config);

// Fixed header: p,mode,a1,a2,s1,s2,class,min_proximity,neglog_sum,depth,status
void write_records_csv(std::ostream& os, const std::vector<ScanRecord>& records);
void write_records_json(std::ostream& os, const std::vector<ScanRecord>& records);
std::vector<ScanRecord> read_records_csv(std::istream& is);

// Aggregate summary document (plain text), a pure function of the records.
std::string report(const std::vector<ScanRecord>& records, const ScanConfig& config);

// Deterministic double formatting used in all outputs.
std::string format_double(double v);

}  // namespace rmsplit
