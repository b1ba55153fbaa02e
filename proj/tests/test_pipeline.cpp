#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <sstream>

#include "drinfeld/cli.hpp"
#include "drinfeld/closed_forms.hpp"
#include "drinfeld/scan.hpp"

using namespace drinfeld;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv = {"drinfeld-spectra"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("drinfeld_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  static int counter() {
    static int c = 0;
    return ++c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

// ---- closed forms ---------------------------------------------------------------

TEST_CASE("closed forms: q=2 d=3") {
  ClosedForms f = closed_forms(2, 3);
  CHECK(f.s == 3);
  CHECK(f.genus == 2);
  CHECK(f.component_group_at_p == 7);
  CHECK(f.core_vertex_count == 4);
  CHECK(f.kappa == 0);
  CHECK(f.core_inverse_weight_sum == BigRat(4));
  CHECK(f.weight_product_ratio == 1);
  CHECK(f.total_inverse_weight == BigRat(6));
}

TEST_CASE("closed forms: q=2 d=4 (even case)") {
  ClosedForms f = closed_forms(2, 4);
  CHECK(f.s == 5);
  CHECK(f.genus == 4);
  CHECK(f.component_group_at_p == 5);
  CHECK(f.kappa == 1);
}

TEST_CASE("closed forms: q=3 d=3") {
  ClosedForms f = closed_forms(3, 3);
  CHECK(f.s == 4);
  CHECK(f.genus == 3);
  CHECK(f.component_group_at_p == 13);
  CHECK(f.core_vertex_count == 4);
  CHECK(f.core_inverse_weight_sum == BigRat(3));
}

TEST_CASE("closed forms match constructed diagrams") {
  for (auto [q, d] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {2, 5}, {3, 3}, {3, 4}, {4, 3}, {5, 3}}) {
    CAPTURE(q);
    CAPTURE(d);
    ClosedForms f = closed_forms(q, d);
    for (const FqPoly& p : enumerate_monic_primes(q, d)) {
      DrinfeldDiagram dg = build_diagram(q, p);
      CoreGraph core = extract_core(dg);
      CHECK(BigInt(core.graph.num_vertices()) == f.core_vertex_count);
      CHECK(BigInt(core.graph.cycle_rank()) == f.genus);
      CHECK(core_inverse_weight_sum(dg) == f.core_inverse_weight_sum);
      CHECK(total_inverse_weight_sum(dg) == f.total_inverse_weight);
      BigInt vp = 1, ep = 1;
      for (int v = 0; v < core.graph.num_vertices(); ++v)
        vp *= to_big(core.graph.vertex_weight[v]);
      for (const auto& e : core.graph.edges) ep *= to_big(e.weight);
      CHECK(make_rat(vp, ep) == BigRat(f.weight_product_ratio));
      // p-fiber banana discriminant = N(p), both parities
      CHECK(discriminant(build_p_fiber_graph(q, p)).order == f.component_group_at_p);
      if (d > 3) break;  // one prime is enough at larger sizes here
    }
  }
}

// ---- scan ------------------------------------------------------------------------

TEST_CASE("scan q=2 d=3..4: row counts, ordering, both pipelines, CSV shape") {
  std::vector<ScanRow> rows = scan(2, 3, 4);
  REQUIRE(rows.size() == 5);  // two cubic + three quartic monic primes
  for (const auto& r : rows) {
    CAPTURE(r.prime);
    CHECK(r.ok());
    CHECK(r.ratio > 0);
    CHECK(r.n > 0);
    CHECK(r.m >= 0);
  }
  CHECK(rows[0].d == 3);
  CHECK(rows[2].d == 4);
  // d=3 primes in packed order
  CHECK(rows[0].prime == "T^3+T+1");
  CHECK(rows[1].prime == "T^3+T^2+1");
  // known |Phi| for d=3 cores at q=2
  CHECK(rows[0].phi_order == 7);
  CHECK(rows[1].phi_order == 7);

  std::ostringstream os;
  write_scan_csv(os, rows);
  std::istringstream is(os.str());
  std::string header;
  std::getline(is, header);
  CHECK(header == "prime,d,absP,phi_order,ln_phi,cq_absP,ratio,n,m,runtime_ms");
  int lines = 0;
  for (std::string line; std::getline(is, line);) ++lines;
  CHECK(lines == 5);
}

TEST_CASE("scan output is deterministic across jobs=1 and jobs=2") {
  ScanOptions opt1, opt2;
  opt2.jobs = 2;
  auto a = scan(2, 3, 4, opt1);
  auto b = scan(2, 3, 4, opt2);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].prime == b[i].prime);
    CHECK(a[i].phi_order == b[i].phi_order);
    CHECK(a[i].ln_phi == b[i].ln_phi);
    CHECK(a[i].n == b[i].n);
    CHECK(a[i].m == b[i].m);
  }
}

TEST_CASE("same-degree primes can carry different component group orders") {
  std::vector<ScanRow> rows = scan(2, 5, 6);
  std::map<int, std::set<std::string>> by_degree;
  for (const auto& r : rows) {
    REQUIRE(r.ok());
    by_degree[r.d].insert(to_string(r.phi_order));
  }
  bool some_degree_varies = false;
  for (auto& [d, orders] : by_degree) some_degree_varies |= orders.size() > 1;
  CHECK(some_degree_varies);
}

TEST_CASE("diagram cache round-trips through DRINFELD_SPECTRA_CACHE format") {
  TempDir tmp;
  const FqField& F = FqField::get(2);
  FqPoly p = parse_poly(F, "T^4+T+1");
  DrinfeldDiagram fresh = build_diagram_cached(2, p, 2, tmp.path.string());
  CHECK(std::filesystem::exists(tmp.path / cache_file_name(2, p)));
  DrinfeldDiagram cached = build_diagram_cached(2, p, 2, tmp.path.string());
  CHECK(json(diagram_to_json(cached)) == json(diagram_to_json(fresh)));
}

// ---- CLI -------------------------------------------------------------------------

TEST_CASE("cli build writes the JSON schema and prints the summary") {
  TempDir tmp;
  std::string out;
  int code = run({"build", "--q", "2", "--poly", "T^3+T+1", "--out", tmp.file("g.json")}, &out);
  CHECK(code == 0);
  CHECK(out.find("core_vertices=4") != std::string::npos);
  CHECK(out.find("core_edges=5") != std::string::npos);
  CHECK(out.find("kappa=0") != std::string::npos);

  json j = json::parse(read_text_file(tmp.file("g.json")));
  CHECK(j.at("meta").at("q") == 2);
  CHECK(j.at("meta").at("modulus") == "T^3+T+1");
  CHECK(j.at("meta").at("kappa") == 0);
  CHECK(j.at("core").at("vertices").size() == 4);
  CHECK(j.at("core").at("boundary").size() == 2);
  CHECK(j.at("cusps").size() == 2);
  for (const auto& jv : j.at("vertices")) {
    CHECK(jv.contains("id"));
    CHECK(jv.contains("type"));
    CHECK(jv.contains("weight"));
    CHECK(jv.contains("infinity_chain"));
  }
  for (const auto& je : j.at("edges")) {
    CHECK(je.contains("origin"));
    CHECK(je.contains("terminus"));
    CHECK(je.contains("weight"));
    CHECK(je.contains("type"));
  }
}

TEST_CASE("cli build rejects degree < 3 with exit 2") {
  std::string err;
  int code = run({"build", "--q", "2", "--poly", "T^2+T+1"}, nullptr, &err);
  CHECK(code == 2);
  CHECK(err.find("degree >= 3 required") != std::string::npos);
}

TEST_CASE("cli build rejects parse errors and bad q with exit 2") {
  std::string err;
  CHECK(run({"build", "--q", "2", "--poly", "T^3+x"}, nullptr, &err) == 2);
  CHECK(run({"build", "--q", "6", "--poly", "T^3+T+1"}, nullptr, &err) == 2);
  CHECK(run({"build", "--q", "2", "--poly", "T^3+T"}, nullptr, &err) == 0);  // composite ok
  std::remove("diagram.json");
}

TEST_CASE("cli build accepts the bare-coefficient spelling 2T and reports cusps") {
  TempDir tmp;
  std::string out;
  int code = run({"build", "--q", "3", "--poly", "T^3+2T+1", "--out", tmp.file("g.json")}, &out);
  CHECK(code == 0);
  CHECK(out.find("kappa=0") != std::string::npos);
  CHECK(out.find("cusps=2") != std::string::npos);
  const FqField& F = FqField::get(3);
  CHECK(parse_poly(F, "T^3+2T+1") == parse_poly(F, "T^3+2*T+1"));
}

TEST_CASE("cli verify: all checks pass on a fresh build, exit 0") {
  TempDir tmp;
  REQUIRE(run({"build", "--q", "3", "--poly", "T^3+2*T+1", "--out", tmp.file("g.json")}) == 0);
  std::string out;
  CHECK(run({"verify", tmp.file("g.json")}, &out) == 0);
  CHECK(out.find("all checks passed") != std::string::npos);
}

TEST_CASE("cli verify flags a hand-edited loop edge with exit 3") {
  TempDir tmp;
  REQUIRE(run({"build", "--q", "2", "--poly", "T^3+T+1", "--out", tmp.file("g.json")}) == 0);
  json j = json::parse(read_text_file(tmp.file("g.json")));
  j["edges"][0]["terminus"] = j["edges"][0]["origin"];
  write_text_file(tmp.file("bad.json"), j.dump());
  std::string out;
  int code = run({"verify", tmp.file("bad.json")}, &out);
  CHECK(code == 3);
  CHECK(out.find("[FAIL] no loops") != std::string::npos);
}

TEST_CASE("cli verify flags a weight breaking (q+1)-regularity with exit 3") {
  TempDir tmp;
  REQUIRE(run({"build", "--q", "2", "--poly", "T^3+T+1", "--out", tmp.file("g.json")}) == 0);
  json j = json::parse(read_text_file(tmp.file("g.json")));
  j["edges"][2]["weight"] = 7;
  write_text_file(tmp.file("bad.json"), j.dump());
  std::string out;
  int code = run({"verify", tmp.file("bad.json")}, &out);
  CHECK(code == 3);
  CHECK(out.find("[FAIL] (q+1)-regularity") != std::string::npos);
}

TEST_CASE("cli verify rejects unreadable input with exit 2") {
  CHECK(run({"verify", "/nonexistent/file.json"}) == 2);
}

TEST_CASE("cli verify rejects out-of-range ids in a tampered file with exit 2") {
  TempDir tmp;
  REQUIRE(run({"build", "--q", "2", "--poly", "T^3+T+1", "--out", tmp.file("g.json")}) == 0);
  json j = json::parse(read_text_file(tmp.file("g.json")));
  j["core"]["vertices"].push_back(9999);
  write_text_file(tmp.file("bad.json"), j.dump());
  CHECK(run({"verify", tmp.file("bad.json")}) == 2);
}

TEST_CASE("cli scan: csv on stdout with correct header and rows") {
  std::string out, err;
  int code = run({"scan", "--q", "2", "--dmin", "3", "--dmax", "3"}, &out, &err);
  CHECK(code == 0);
  std::istringstream is(out);
  std::string header;
  std::getline(is, header);
  CHECK(header == "prime,d,absP,phi_order,ln_phi,cq_absP,ratio,n,m,runtime_ms");
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) lines.push_back(line);
  REQUIRE(lines.size() == 2);  // two cubic primes
  CHECK(lines[0].substr(0, 8) == "T^3+T+1,");
  CHECK(lines[1].substr(0, 10) == "T^3+T^2+1,");
}

TEST_CASE("cli scan validates its range with exit 2") {
  CHECK(run({"scan", "--q", "2", "--dmin", "2", "--dmax", "3"}) == 2);
  CHECK(run({"scan", "--q", "2", "--dmin", "4", "--dmax", "3"}) == 2);
}

TEST_CASE("cli cq emits the documented JSON") {
  std::string out;
  CHECK(run({"cq", "--q", "5"}, &out) == 0);
  json j = json::parse(out);
  CHECK(j.at("q") == 5);
  CHECK(std::abs(j.at("Cq").get<double>() - 1.691) <= 1e-3);
  CHECK(j.at("abs_tol") == 1e-6);
  CHECK(j.contains("c_q"));
  CHECK(j.contains("residual_vs_ln_q_plus_half"));
}

TEST_CASE("cli cq values for q=2 and q=13") {
  std::string out;
  CHECK(run({"cq", "--q", "2"}, &out) == 0);
  CHECK(std::abs(json::parse(out).at("Cq").get<double>() - 0.837) <= 1e-3);
  CHECK(run({"cq", "--q", "13"}, &out) == 0);
  CHECK(std::abs(json::parse(out).at("Cq").get<double>() - 2.601) <= 1e-3);
}

TEST_CASE("cli scan q=2 d=3..6 finishes inside the documented budget") {
  auto t0 = std::chrono::steady_clock::now();
  std::string out, err;
  int code = run({"scan", "--q", "2", "--dmin", "3", "--dmax", "6", "--jobs", "2"}, &out, &err);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(code == 0);
  CHECK(secs < 60.0);
  // row count = sum of monic prime counts per degree: 2 + 3 + 6 + 9
  std::istringstream is(out);
  std::string line;
  std::getline(is, line);
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 20);
}

TEST_CASE("cli build --histogram fails with exit 4 when the cusp spectrum is empty") {
  TempDir tmp;
  std::string err;
  int code = run({"build", "--q", "2", "--poly", "T^3+T+1", "--out", tmp.file("g.json"),
                  "--histogram", tmp.file("h.csv")},
                 nullptr, &err);
  CHECK(code == 4);
  CHECK(err.find("empty cusp spectrum") != std::string::npos);
}

TEST_CASE("cli build --discriminant writes the report JSON") {
  TempDir tmp;
  std::string out;
  int code = run({"build", "--q", "2", "--poly", "T^3+T+1", "--out", tmp.file("g.json"),
                  "--discriminant", tmp.file("d.json")},
                 &out);
  CHECK(code == 0);
  CHECK(out.find("component_group_order=7") != std::string::npos);
  json j = json::parse(read_text_file(tmp.file("d.json")));
  CHECK(j.at("order") == "7");
  BigInt prod = 1;
  for (const auto& e : j.at("elementary_divisors")) prod *= BigInt(e.get<std::string>());
  CHECK(prod == 7);
}

TEST_CASE("cli usage errors exit with 2") {
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({"build", "--poly", "T^3+T+1"}) == 2);  // missing --q
  CHECK(run({}) == 2);
  CHECK(run({"--help"}) == 0);
}

TEST_CASE("cli build can emit the spectral report and histogram files") {
  TempDir tmp;
  std::string out;
  int code = run({"build", "--q", "2", "--poly", "T^5+T^2+1", "--out", tmp.file("g.json"),
                  "--spectra", tmp.file("s.json"), "--histogram", tmp.file("h.csv")},
                 &out);
  CHECK(code == 0);
  json s = json::parse(read_text_file(tmp.file("s.json")));
  CHECK(s.at("q") == 2);
  CHECK(s.at("n") == 20);
  CHECK(s.at("bounds_ok") == true);
  CHECK(s.at("laplacian_eigs").size() == 20);
  std::istringstream is(read_text_file(tmp.file("h.csv")));
  std::string header;
  std::getline(is, header);
  CHECK(header == "bin_left,bin_right,count,mu_q_mass");
}

TEST_CASE("cache environment variable is honored by the cli") {
  TempDir tmp;
  setenv("DRINFELD_SPECTRA_CACHE", tmp.path.string().c_str(), 1);
  TempDir outdir;
  CHECK(run({"build", "--q", "2", "--poly", "T^4+T^3+1", "--out", outdir.file("g.json")}) == 0);
  const FqField& F = FqField::get(2);
  CHECK(std::filesystem::exists(tmp.path / cache_file_name(2, parse_poly(F, "T^4+T^3+1"))));
  CHECK(run({"build", "--q", "2", "--poly", "T^4+T^3+1", "--out", outdir.file("g2.json")}) == 0);
  unsetenv("DRINFELD_SPECTRA_CACHE");
  CHECK(json::parse(read_text_file(outdir.file("g.json"))) ==
        json::parse(read_text_file(outdir.file("g2.json"))));
}

TEST_CASE("discriminant report JSON format") {
  WeightedGraph g;
  g.add_vertex(1);
  g.add_vertex(1);
  for (long long w : {1, 2, 3}) g.add_edge(0, 1, w);
  json j = discriminant_to_json(discriminant(g));
  CHECK(j.at("order") == "11");
  CHECK(j.at("elementary_divisors").is_array());
}
