// Command-line entry point for the toolkit: field arithmetic queries,
// Hirzebruch-Zagier divisor audits, Hecke orbit experiments, binary
// quadratic form utilities, lattice benchmarks, scans and reports.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rmsplit/scan.hpp"
#include "rmsplit/spend.hpp"

using namespace rmsplit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRegistry = 3;

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path, std::ios::binary);
  if (!file) fail(Errc::parse, "cannot open output file: " + path);
  return file;
}

void emit_records(const ScanConfig& cfg, const std::vector<ScanRecord>& records) {
  std::ofstream file;
  std::ostream& os = open_out(file, cfg.out_path);
  if (cfg.format == "json")
    write_records_json(os, records);
  else
    write_records_csv(os, records);
}

int run_field(i64 D, i64 nmax) {
  QuadraticField F = QuadraticField::from_discriminant(D);
  std::cout << "field Q(sqrt " << F.d() << "), discriminant " << F.D() << "\n";
  auto eps = fundamental_unit(F);
  std::cout << "fundamental unit " << eps << ", norm " << eps.norm() << "\n";
  std::cout << "p,splitting,lambda,lambda_norm\n";
  for (i64 p : primes_upto(nmax)) {
    auto st = splitting_type(F, p);
    std::cout << p << ',' << to_string(st) << ',';
    if (st == SplittingType::Split) {
      auto lam = split_generator(F, p);
      if (lam)
        std::cout << *lam << ',' << lam->norm();
      else
        std::cout << "-,";
    } else {
      std::cout << "-,";
    }
    std::cout << '\n';
  }
  return kExitOk;
}

int run_qform(i64 disc, std::vector<i64> form) {
  if (!form.empty()) {
    if (form.size() != 3) fail(Errc::parse, "--form needs a b c");
    BinaryQF q(form[0], form[1], form[2]);
    auto r = reduce(q);
    std::cout << "form " << q.str() << " disc " << q.disc() << " reduced " << r.str() << "\n";
    return kExitOk;
  }
  std::cout << "disc " << disc << " class number " << class_number(disc) << "\n";
  return kExitOk;
}

int run_hecke_demo(i64 D, i64 p, double x1, double y1, double x2, double y2) {
  QuadraticField F = QuadraticField::from_discriminant(D);
  if (splitting_type(F, p) != SplittingType::Split) {
    std::cout << "p=" << p << " is not split in Q(sqrt " << F.d() << ")\n";
    return kExitOk;
  }
  auto lam = split_generator(F, p);
  if (!lam) {
    std::cout << "no totally positive generator of norm " << p << "\n";
    return kExitOk;
  }
  PointH2 base(Complex((Real)x1, (Real)y1), Complex((Real)x2, (Real)y2));
  auto orbit = hecke_orbit(base, p, *lam, F);
  auto fam = compact_family(F, 50);
  auto comps = fam.empty() ? std::vector<ComponentMatrix>{}
                           : enumerate_components(fam.front(), F, {}, 10.0 * (double)fam.front());
  std::cout << "lambda " << *lam << "\n";
  std::cout << "j,z1_re,z1_im,z2_re,z2_im,min_proximity\n";
  for (size_t j = 0; j < orbit.size(); ++j) {
    Real best = -1;
    for (auto& M : comps) {
      Real d = proximity(orbit[j], M);
      if (best < 0 || d < best) best = d;
    }
    std::cout << j << ',' << format_double((double)orbit[j].z1.real()) << ','
              << format_double((double)orbit[j].z1.imag()) << ','
              << format_double((double)orbit[j].z2.real()) << ','
              << format_double((double)orbit[j].z2.imag()) << ',' << format_double((double)best)
              << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RM abelian surface split-reduction toolkit"};
  app.require_subcommand(1);

  ScanConfig cfg;
  cfg.registry_path = RMSPLIT_DATA_DIR "/curves.txt";

  i64 disc_flag = 5;
  i64 qf_disc = -4;
  std::vector<i64> qf_form;
  std::string mode_str = "satotate";
  std::string report_in, report_out;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--discriminant", disc_flag, "field discriminant D");
    sub->add_option("--nmin", cfg.nmin, "lower end of the prime/r range");
    sub->add_option("--nmax", cfg.nmax, "upper end of the prime/r range");
    sub->add_option("--epsilon", cfg.epsilon, "epsilon threshold");
    sub->add_option("--seed", cfg.seed, "random seed (determinism contract)");
    sub->add_option("--out", cfg.out_path, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--curve", cfg.curve_label, "curve label from the registry");
    sub->add_option("--registry", cfg.registry_path, "curve registry path");
    sub->add_option("--height-mult", cfg.height_mult, "enumeration height multiplier");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  };

  auto* field = app.add_subcommand("field", "field arithmetic summary");
  add_common(field);

  auto* hz = app.add_subcommand("hz", "Hirzebruch-Zagier divisor audit");
  add_common(hz);

  auto* hecke = app.add_subcommand("hecke", "Hecke orbit of the base point at one prime");
  add_common(hecke);
  i64 hecke_p = 11;
  hecke->add_option("-p,--prime", hecke_p, "split prime");

  auto* qform = app.add_subcommand("qform", "binary quadratic form utilities");
  qform->add_option("--disc", qf_disc, "negative discriminant for the class number");
  qform->add_option("--form", qf_form, "a b c: reduce this form")->expected(3);

  auto* lattice = app.add_subcommand("lattice", "synthetic filtration lattice benchmarks");
  add_common(lattice);

  auto* scan = app.add_subcommand("scan", "full scan with a mode");
  add_common(scan);
  scan->add_option("--mode", mode_str, "satotate | heckenear | lattice-bench | hz-audit");

  auto* rep = app.add_subcommand("report", "summarize a records CSV");
  add_common(rep);
  rep->add_option("--in", report_in, "records CSV path")->required();
  rep->add_option("--report-out", report_out, "report output path");
  rep->add_option("--mode", mode_str, "mode the records came from");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    cfg.D = disc_flag;
    if (field->parsed()) return run_field(disc_flag, cfg.nmax);
    if (qform->parsed()) return run_qform(qf_disc, qf_form);
    if (hecke->parsed())
      return run_hecke_demo(disc_flag, hecke_p, cfg.base_x1, cfg.base_y1, cfg.base_x2,
                            cfg.base_y2);
    if (hz->parsed()) {
      cfg.mode = ScanMode::HZAudit;
      emit_records(cfg, run_scan(cfg));
      return kExitOk;
    }
    if (lattice->parsed()) {
      cfg.mode = ScanMode::LatticeBench;
      emit_records(cfg, run_scan(cfg));
      return kExitOk;
    }
    if (scan->parsed()) {
      cfg.mode = scan_mode_from_string(mode_str);
      emit_records(cfg, run_scan(cfg));
      return kExitOk;
    }
    if (rep->parsed()) {
      cfg.mode = scan_mode_from_string(mode_str);
      std::ifstream in(report_in);
      if (!in) {
        std::cerr << "cannot open records: " << report_in << "\n";
        return kExitConfig;
      }
      auto records = read_records_csv(in);
      std::ofstream file;
      std::ostream& os = open_out(file, report_out);
      os << report(records, cfg);
      return kExitOk;
    }
  } catch (const Error& e) {
    bool registry_issue = std::string(e.what()).find("registry") != std::string::npos ||
                          std::string(e.what()).find("curve label") != std::string::npos;
    std::cerr << "error: " << e.what() << "\n";
    return registry_issue ? kExitRegistry : kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
