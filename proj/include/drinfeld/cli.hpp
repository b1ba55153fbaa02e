#pragma once

// Command-line driver. Subcommands:
//   build  --q Q --poly N [--extra-depth K] [--out FILE] [--spectra FILE] [--histogram FILE]
//   verify FILE [--exact-max-n N]
//   scan   --q Q --dmin A --dmax B [--out FILE] [--jobs N] [--extra-depth K]
//   cq     --q Q [--tol T]
//
// Exit codes: 0 success, 2 usage/parse error, 3 invariant failure,
// 4 numerical failure. DRINFELD_SPECTRA_CACHE, when set, caches built
// diagrams keyed by (q, modulus).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "drinfeld/json_io.hpp"
#include "drinfeld/scan.hpp"
#include "drinfeld/verify.hpp"

namespace drinfeld {

inline bool is_numerical_failure(const std::string& msg) {
  return msg.find("convergence failure") != std::string::npos ||
         msg.find("tolerance not met") != std::string::npos;
}

inline std::string cache_dir_from_env() {
  const char* dir = std::getenv("DRINFELD_SPECTRA_CACHE");
  return dir ? dir : "";
}

inline int cmd_build(int q, const std::string& poly_text, int extra_depth,
                     const std::string& out_path, const std::string& spectra_path,
                     const std::string& histogram_path, const std::string& discriminant_path,
                     std::ostream& out, std::ostream& err) {
  FqPoly n = FqPoly::zero(FqField::get(2));
  try {
    if (!FqField::supported(q)) throw std::runtime_error("unsupported q");
    n = parse_poly(FqField::get(q), poly_text);
    if (!n.is_monic()) throw std::runtime_error("modulus must be monic");
    if (n.degree() < 3) throw std::runtime_error("degree >= 3 required");
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  try {
    DrinfeldDiagram dg = build_diagram_cached(q, n, extra_depth, cache_dir_from_env());
    CoreGraph core = extract_core(dg);
    write_text_file(out_path, diagram_to_json(dg).dump(2) + "\n");
    out << "q=" << q << " modulus=" << n.to_string() << " kappa=" << dg.kappa << "\n";
    out << "vertices=" << dg.vertices.size() << " edges=" << dg.edges.size()
        << " cusps=" << dg.cusps.size() << "\n";
    out << "core_vertices=" << core.graph.num_vertices()
        << " core_edges=" << core.graph.num_edges() << "\n";
    Discriminant disc = discriminant(core.graph);
    out << "component_group_order=" << to_string(disc.order) << "\n";
    out << "graph written to " << out_path << "\n";
    if (!discriminant_path.empty()) {
      write_text_file(discriminant_path, discriminant_to_json(disc).dump(2) + "\n");
      out << "discriminant report written to " << discriminant_path << "\n";
    }
    if (!spectra_path.empty() || !histogram_path.empty()) {
      SpectralReport rep = spectral_report(core, q);
      if (!spectra_path.empty()) {
        write_text_file(spectra_path, spectral_report_to_json(rep).dump(2) + "\n");
        out << "spectral report written to " << spectra_path << "\n";
      }
      if (!histogram_path.empty()) {
        if (rep.cusp_eigs.empty()) {
          err << "error: empty cusp spectrum, no histogram written\n";
          return 4;
        }
        EquidistributionReport eq = equidistribution_report(rep.cusp_eigs, q);
        write_text_file(histogram_path, histogram_to_csv(eq.histogram));
        out << "histogram written to " << histogram_path << "\n";
      }
    }
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return is_numerical_failure(ex.what()) ? 4 : 3;
  }
}

inline int cmd_verify(const std::string& path, int exact_max_n, std::ostream& out,
                      std::ostream& err) {
  DrinfeldDiagram dg;
  try {
    dg = diagram_from_json(json::parse(read_text_file(path)));
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  try {
    auto results = verify_diagram(dg, exact_max_n);
    bool all_ok = true;
    for (const auto& r : results) {
      out << (r.ok ? "[ok]   " : "[FAIL] ") << r.name;
      if (!r.detail.empty()) out << " -- " << r.detail;
      out << "\n";
      all_ok = all_ok && r.ok;
    }
    out << (all_ok ? "all checks passed\n" : "some checks FAILED\n");
    return all_ok ? 0 : 3;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return is_numerical_failure(ex.what()) ? 4 : 3;
  }
}

inline int cmd_scan(int q, int dmin, int dmax, int jobs, int extra_depth,
                    const std::string& out_path, std::ostream& out, std::ostream& err) {
  try {
    if (!FqField::supported(q)) throw std::runtime_error("unsupported q");
    if (dmin < 3 || dmax < dmin) throw std::runtime_error("need 3 <= dmin <= dmax");
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  try {
    ScanOptions opt;
    opt.jobs = jobs;
    opt.extra_depth = extra_depth;
    opt.cache_dir = cache_dir_from_env();
    opt.progress = &err;
    std::vector<ScanRow> rows = scan(q, dmin, dmax, opt);
    if (out_path.empty()) {
      write_scan_csv(out, rows);
    } else {
      std::ostringstream os;
      write_scan_csv(os, rows);
      write_text_file(out_path, os.str());
      out << "scan written to " << out_path << "\n";
    }
    for (const auto& r : rows)
      if (!r.ok()) err << "row failed: " << r.prime << ": " << r.error << "\n";
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return is_numerical_failure(ex.what()) ? 4 : 3;
  }
}

inline int cmd_cq(int q, double tol, std::ostream& out, std::ostream& err) {
  try {
    if (!FqField::supported(q)) throw std::runtime_error("unsupported q");
    double c = cq(q, tol);
    json j;
    j["q"] = q;
    j["Cq"] = c;
    j["abs_tol"] = tol;
    j["c_q"] = 2.0 * c / (static_cast<double>(q - 1) * (q - 1) * (q + 1));
    j["residual_vs_ln_q_plus_half"] = c - std::log(q + 0.5);
    out << j.dump(2) << "\n";
    return 0;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return is_numerical_failure(ex.what()) ? 4 : 2;
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{"weighted quotient graphs of the Bruhat-Tits tree, component groups, and spectra"};
  app.require_subcommand(1);

  auto* b = app.add_subcommand("build", "build the quotient graph for Gamma_0(n)");
  int b_q = 2;
  std::string b_poly, b_out = "diagram.json", b_spectra, b_hist, b_disc;
  int b_depth = 2;
  b->add_option("--q", b_q, "field size q")->required();
  b->add_option("--poly", b_poly, "modulus polynomial, e.g. \"T^3+T+1\"")->required();
  b->add_option("--extra-depth", b_depth, "layers stored past type d-1 (default 2)");
  b->add_option("--out", b_out, "output graph JSON path (default diagram.json)");
  b->add_option("--spectra", b_spectra, "also write the core spectral report JSON");
  b->add_option("--histogram", b_hist, "also write the cusp-spectrum histogram CSV");
  b->add_option("--discriminant", b_disc, "also write the discriminant report JSON");

  auto* v = app.add_subcommand("verify", "run the invariant suite on a graph JSON file");
  std::string v_file;
  int v_maxn = 100;
  v->add_option("file", v_file, "graph JSON file")->required();
  v->add_option("--exact-max-n", v_maxn,
                "largest core size for the exact characteristic polynomial path (default 100)");

  auto* s = app.add_subcommand("scan", "scan all monic primes of each degree");
  int s_q = 2, s_dmin = 3, s_dmax = 3, s_jobs = 1, s_depth = 2;
  std::string s_out;
  s->add_option("--q", s_q, "field size q")->required();
  s->add_option("--dmin", s_dmin, "smallest degree")->required();
  s->add_option("--dmax", s_dmax, "largest degree")->required();
  s->add_option("--jobs", s_jobs, "parallel scan workers (default 1)");
  s->add_option("--extra-depth", s_depth, "layers stored past type d-1 (default 2)");
  s->add_option("--out", s_out, "CSV output path (default: standard output)");

  auto* c = app.add_subcommand("cq", "evaluate the spectral constant C_q");
  int c_q = 2;
  double c_tol = 1e-6;
  c->add_option("--q", c_q, "field size q")->required();
  c->add_option("--tol", c_tol, "absolute tolerance (default 1e-6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (b->parsed())
    return cmd_build(b_q, b_poly, b_depth, b_out, b_spectra, b_hist, b_disc, out, err);
  if (v->parsed()) return cmd_verify(v_file, v_maxn, out, err);
  if (s->parsed()) return cmd_scan(s_q, s_dmin, s_dmax, s_jobs, s_depth, s_out, out, err);
  if (c->parsed()) return cmd_cq(c_q, c_tol, out, err);
  err << "error: no subcommand\n";
  return 2;
}

}  // namespace drinfeld
