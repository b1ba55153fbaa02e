#pragma once

// Stable file formats.
//
// Graph JSON schema:
//   {"meta":{"q":..., "modulus":"T^3+T+1", "kappa":0},
//    "vertices":[{"id":..., "type":..., "weight":..., "infinity_chain":bool}],
//    "edges":[{"id":..., "type":..., "origin":..., "terminus":..., "weight":...}],
//    "cusps":[{"attach":vertex-id}],
//    "core":{"vertices":[ids], "boundary":[ids]}}
//
// Discriminant report: {"order": "<decimal>", "elementary_divisors": ["<decimal>", ...]}.
// Quadrature result:   {"q":..., "Cq":..., "abs_tol":...} plus derived fields.
// Big integers are decimal strings; floats carry 17 significant digits.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "drinfeld/diagram.hpp"
#include "drinfeld/discriminant.hpp"
#include "drinfeld/spectra.hpp"

namespace drinfeld {

using json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline json diagram_to_json(const DrinfeldDiagram& dg) {
  json j;
  j["meta"] = {{"q", dg.q}, {"modulus", dg.modulus.to_string()}, {"kappa", dg.kappa}};
  j["vertices"] = json::array();
  for (size_t v = 0; v < dg.vertices.size(); ++v)
    j["vertices"].push_back({{"id", v},
                             {"type", dg.vertices[v].type},
                             {"weight", dg.vertices[v].weight},
                             {"infinity_chain", dg.vertices[v].infinity_chain}});
  j["edges"] = json::array();
  for (size_t e = 0; e < dg.edges.size(); ++e)
    j["edges"].push_back({{"id", e},
                          {"type", dg.edges[e].type},
                          {"origin", dg.edges[e].origin},
                          {"terminus", dg.edges[e].terminus},
                          {"weight", dg.edges[e].weight}});
  j["cusps"] = json::array();
  for (const auto& c : dg.cusps) j["cusps"].push_back({{"attach", c.attach}});
  j["core"] = {{"vertices", dg.core_vertices}, {"boundary", dg.core_boundary}};
  return j;
}

// Rebuild a diagram from the schema. Orbit data and stored tails are not part
// of the format; everything the verification suite needs is reconstructed.
inline DrinfeldDiagram diagram_from_json(const json& j) {
  DrinfeldDiagram dg;
  dg.q = j.at("meta").at("q").get<int>();
  if (!FqField::supported(dg.q)) throw std::runtime_error("unsupported q in graph file");
  const FqField& F = FqField::get(dg.q);
  dg.modulus = parse_poly(F, j.at("meta").at("modulus").get<std::string>());
  dg.d = dg.modulus.degree();
  dg.kappa = j.at("meta").at("kappa").get<int>();
  if (dg.kappa != (dg.d % 2 == 0 ? 1 : 0))
    throw std::runtime_error("kappa inconsistent with modulus degree");
  dg.modulus_prime = is_irreducible(dg.modulus);

  size_t nv = j.at("vertices").size();
  dg.vertices.resize(nv);
  for (const auto& jv : j.at("vertices")) {
    size_t id = jv.at("id").get<size_t>();
    if (id >= nv) throw std::runtime_error("vertex id out of range");
    dg.vertices[id] = {jv.at("type").get<int>(), jv.at("weight").get<long long>(),
                       jv.at("infinity_chain").get<bool>(), {}};
  }
  int max_type = 0;
  for (const auto& v : dg.vertices) max_type = std::max(max_type, v.type);
  dg.extra_depth = max_type - (dg.d - 1);

  size_t ne = j.at("edges").size();
  dg.edges.resize(ne);
  for (const auto& je : j.at("edges")) {
    size_t id = je.at("id").get<size_t>();
    if (id >= ne) throw std::runtime_error("edge id out of range");
    int o = je.at("origin").get<int>(), t = je.at("terminus").get<int>();
    if (o < 0 || t < 0 || o >= static_cast<int>(nv) || t >= static_cast<int>(nv))
      throw std::runtime_error("edge endpoint out of range");
    dg.edges[id] = {je.at("type").get<int>(), o, t, je.at("weight").get<long long>()};
  }
  for (const auto& jc : j.at("cusps")) dg.cusps.push_back({jc.at("attach").get<int>(), {}});
  dg.core_vertices = j.at("core").at("vertices").get<std::vector<int>>();
  dg.core_boundary = j.at("core").at("boundary").get<std::vector<int>>();
  std::sort(dg.core_vertices.begin(), dg.core_vertices.end());
  std::sort(dg.core_boundary.begin(), dg.core_boundary.end());
  auto in_range = [&](int v) { return v >= 0 && v < static_cast<int>(nv); };
  for (int v : dg.core_vertices)
    if (!in_range(v)) throw std::runtime_error("core vertex id out of range");
  for (int v : dg.core_boundary)
    if (!in_range(v)) throw std::runtime_error("boundary vertex id out of range");
  for (const auto& c : dg.cusps)
    if (!in_range(c.attach)) throw std::runtime_error("cusp attachment id out of range");
  return dg;
}

inline json discriminant_to_json(const Discriminant& d) {
  json j;
  j["order"] = to_string(d.order);
  j["elementary_divisors"] = json::array();
  for (const BigInt& e : d.elementary_divisors) j["elementary_divisors"].push_back(to_string(e));
  return j;
}

inline json spectral_report_to_json(const SpectralReport& r) {
  json j;
  j["q"] = r.q;
  j["n"] = r.n;
  j["m"] = r.m;
  auto arr = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
  };
  j["laplacian_eigs"] = arr(r.laplacian_eigs);
  j["adjacency_eigs"] = arr(r.adjacency_eigs);
  j["shifted_eigs"] = arr(r.shifted_eigs);
  j["cusp_eigs"] = arr(r.cusp_eigs);
  j["S"] = r.s_p;
  j["S_cusp"] = r.s_cusp;
  j["clustering_warnings"] = r.clustering_warnings;
  j["bounds_ok"] = r.bounds_ok;
  j["verdicts"] = json::array();
  for (const auto& b : r.verdicts)
    j["verdicts"].push_back(
        {{"name", b.name}, {"value", b.value}, {"limit", b.limit}, {"ok", b.ok}});
  return j;
}

inline std::string histogram_to_csv(const std::vector<HistogramBin>& bins) {
  std::ostringstream os;
  os << "bin_left,bin_right,count,mu_q_mass\n";
  for (const auto& b : bins)
    os << format_double(b.left) << "," << format_double(b.right) << "," << b.count << ","
       << format_double(b.mu_mass) << "\n";
  return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace drinfeld
