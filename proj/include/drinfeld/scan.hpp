#pragma once

// Prime scan for the growth law: for every monic prime of each degree, build
// the diagram, extract the core, compute |Phi| = D_{G_0(p),w} twice (Gram
// determinant and the spectral rearrangement of the matrix-tree identity —
// the two must agree bit-for-bit), run the spectral report, and compare
// ln|Phi| against c(q) |p|.
//
// CSV columns: prime,d,absP,phi_order,ln_phi,cq_absP,ratio,n,m,runtime_ms

#include <atomic>
#include <chrono>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "drinfeld/closed_forms.hpp"
#include "drinfeld/diagram.hpp"
#include "drinfeld/discriminant.hpp"
#include "drinfeld/json_io.hpp"
#include "drinfeld/quadrature.hpp"
#include "drinfeld/spectra.hpp"

namespace drinfeld {

struct ScanRow {
  std::string prime;
  int d = 0;
  BigInt absP;
  BigInt phi_order;
  double ln_phi = 0;
  double cq_absP = 0;
  double ratio = 0;
  int n = 0;
  int m = 0;
  long long runtime_ms = 0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

struct ScanOptions {
  int extra_depth = 2;
  int jobs = 1;
  std::string cache_dir;          // diagram cache keyed by (q, modulus)
  std::ostream* progress = nullptr;
};

inline std::string cache_file_name(int q, const FqPoly& n) {
  std::string s = n.to_string();
  for (char& c : s) {
    if (c == '^') c = 'e';
    if (c == '+') c = 'p';
    if (c == '*') c = 'm';
  }
  return "q" + std::to_string(q) + "_" + s + ".json";
}

inline DrinfeldDiagram build_diagram_cached(int q, const FqPoly& n, int extra_depth,
                                            const std::string& cache_dir) {
  if (!cache_dir.empty()) {
    std::string path = cache_dir + "/" + cache_file_name(q, n);
    try {
      DrinfeldDiagram dg = diagram_from_json(json::parse(read_text_file(path)));
      if (dg.extra_depth >= extra_depth) return dg;
    } catch (...) {
      // absent or unusable cache entry; rebuild below
    }
    DrinfeldDiagram dg = build_diagram(q, n, extra_depth);
    try {
      write_text_file(path, diagram_to_json(dg).dump());
    } catch (...) {
      // cache directory not writable; carry on without caching
    }
    return dg;
  }
  return build_diagram(q, n, extra_depth);
}

// Core computation for one prime. Closed-form cross-checks run before any
// row is emitted; a failure is recorded in the row's error field.
inline ScanRow scan_one_prime(int q, const FqPoly& p, double c_of_q, const ScanOptions& opt) {
  ScanRow row;
  row.prime = p.to_string();
  row.d = p.degree();
  row.absP = big_pow(BigInt(q), row.d);
  auto t0 = std::chrono::steady_clock::now();
  try {
    DrinfeldDiagram dg = build_diagram_cached(q, p, opt.extra_depth, opt.cache_dir);
    CoreGraph core = extract_core(dg);
    ClosedForms cf = closed_forms(q, row.d);

    if (BigInt(core.graph.cycle_rank()) != cf.genus)
      throw std::runtime_error("core cycle rank != genus closed form");
    if (BigInt(core.graph.num_vertices()) != cf.core_vertex_count)
      throw std::runtime_error("core vertex count != closed form");
    if (core_inverse_weight_sum(dg) != cf.core_inverse_weight_sum)
      throw std::runtime_error("core inverse-weight sum != closed form");
    if (total_inverse_weight_sum(dg) != cf.total_inverse_weight)
      throw std::runtime_error("volume identity failed");

    BigInt d1 = discriminant(core.graph, /*with_divisors=*/false).order;
    BigInt d2 = discriminant_via_spectrum(core.graph);
    if (d1 != d2) throw std::runtime_error("discriminant pipelines disagree");

    SpectralReport rep = spectral_report(core, q);
    row.phi_order = d1;
    row.ln_phi = big_ln(d1);
    row.cq_absP = c_of_q * row.absP.get_d();
    row.ratio = row.ln_phi / row.cq_absP;
    row.n = rep.n;
    row.m = rep.m;
  } catch (const std::exception& ex) {
    row.error = ex.what();
  }
  row.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
  return row;
}

inline std::vector<ScanRow> scan(int q, int dmin, int dmax, const ScanOptions& opt = {}) {
  if (dmin < 3 || dmax < dmin) throw std::runtime_error("scan needs 3 <= dmin <= dmax");
  double c_of_q = cq_rate(q, 1e-8);

  std::vector<FqPoly> primes;
  for (int d = dmin; d <= dmax; ++d)
    for (const FqPoly& p : enumerate_monic_primes(q, d)) primes.push_back(p);

  std::vector<ScanRow> rows(primes.size());
  std::atomic<size_t> next{0};
  std::atomic<size_t> done{0};
  int jobs = std::max(1, opt.jobs);
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= primes.size()) break;
      rows[i] = scan_one_prime(q, primes[i], c_of_q, opt);
      size_t k = ++done;
      if (opt.progress)
        (*opt.progress) << "\rscan q=" << q << ": " << k << "/" << primes.size() << std::flush;
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (opt.progress) (*opt.progress) << "\n";
  return rows;  // already ordered by (d, packed polynomial value)
}

inline void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "prime,d,absP,phi_order,ln_phi,cq_absP,ratio,n,m,runtime_ms\n";
  for (const ScanRow& r : rows) {
    if (!r.ok()) {
      os << r.prime << "," << r.d << "," << to_string(r.absP) << ",ERROR:" << r.error
         << ",,,,,," << r.runtime_ms << "\n";
      continue;
    }
    os << r.prime << "," << r.d << "," << to_string(r.absP) << "," << to_string(r.phi_order)
       << "," << format_double(r.ln_phi) << "," << format_double(r.cq_absP) << ","
       << format_double(r.ratio) << "," << r.n << "," << r.m << "," << r.runtime_ms << "\n";
  }
}

}  // namespace drinfeld
