// Acceptance suite: runs the project's ten acceptance criteria end to end and
// prints one pass/fail line per criterion. Usage:
//
//   acceptance                 run everything
//   acceptance --criterion N   run one criterion
//
// Exit code 0 iff every executed criterion passes.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "drinfeld/closed_forms.hpp"
#include "drinfeld/diagram.hpp"
#include "drinfeld/discriminant.hpp"
#include "drinfeld/quadrature.hpp"
#include "drinfeld/scan.hpp"
#include "drinfeld/spectra.hpp"
#include "oracles.hpp"

using namespace drinfeld;

namespace {

constexpr int kJobs = 2;

template <class F>
void parallel_over(size_t count, const F& f) {
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= count) break;
      f(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < kJobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

struct Failure {
  std::ostringstream msg;
  bool failed = false;
};

#define REQUIRE_OR_FAIL(cond, text)                    \
  do {                                                 \
    if (!(cond)) {                                     \
      fail.failed = true;                              \
      fail.msg << text << "; ";                        \
      return;                                          \
    }                                                  \
  } while (0)

// ---- criterion 1: exact matrix-tree identity --------------------------------

bool criterion_matrix_tree(std::ostream& log) {
  // (a) 200 random connected weighted graphs, <= 7 vertices, weights <= 4,
  // cross-checked against the spanning-tree and principal-minor oracles
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    WeightedGraph g = oracle::random_graph(rng, 7, 5, 4);
    MatrixTreeCheck mt = verify_matrix_tree_identity(g, /*exact=*/true);
    if (!mt.ok) {
      log << "random graph trial " << trial << " failed exact identity";
      return false;
    }
    if (discriminant(g, false, true).order != oracle::discriminant_by_spanning_trees(g)) {
      log << "random graph trial " << trial << " disagrees with spanning-tree oracle";
      return false;
    }
    if (laplacian_eigenvalue_product(g) != oracle::laplacian_eig_product_by_minors(g)) {
      log << "random graph trial " << trial << " disagrees with principal-minor oracle";
      return false;
    }
  }

  // (b) every core for q in {2,3}, 3 <= d <= 6
  struct Item {
    int q;
    FqPoly p;
  };
  std::vector<Item> items;
  for (int q : {2, 3})
    for (int d = 3; d <= 6; ++d)
      for (const FqPoly& p : enumerate_monic_primes(q, d)) items.push_back({q, p});
  std::vector<char> ok(items.size(), 0);
  parallel_over(items.size(), [&](size_t i) {
    CoreGraph core = extract_core(build_diagram(items[i].q, items[i].p));
    ok[i] = verify_matrix_tree_identity(core.graph, /*exact=*/true).ok ? 1 : 0;
  });
  for (size_t i = 0; i < items.size(); ++i)
    if (!ok[i]) {
      log << "core failed exact identity: q=" << items[i].q << " p=" << items[i].p.to_string();
      return false;
    }
  log << "200 random graphs + " << items.size() << " cores, all bit-exact";
  return true;
}

// ---- criterion 2: banana closed forms ----------------------------------------

bool criterion_banana(std::ostream& log) {
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 50; ++trial) {
    int m = 2 + rng() % 7;
    std::vector<long long> w(m);
    for (auto& x : w) x = 1 + rng() % 9;
    WeightedGraph g;
    g.add_vertex(1);
    g.add_vertex(1);
    for (long long x : w) g.add_edge(0, 1, x);

    BigInt expect = 0;
    for (int i = 0; i < m; ++i) {
      BigInt prod = 1;
      for (int j = 0; j < m; ++j)
        if (j != i) prod *= to_big(w[j]);
      expect += prod;
    }
    if (discriminant(g).order != expect) {
      log << "banana discriminant mismatch at trial " << trial;
      return false;
    }
    double inv = 0;
    for (long long x : w) inv += 1.0 / static_cast<double>(x);
    auto eig = eigenvalues(g, /*laplacian=*/true);
    if (std::abs(eig[0]) > 1e-10 || std::abs(eig[1] - 2 * inv) > 1e-10) {
      log << "banana eigenvalue mismatch at trial " << trial;
      return false;
    }
  }
  log << "50 random weight vectors, discriminant bit-exact, eigenvalue within 1e-10";
  return true;
}

// ---- criterion 3: d = 3 characteristic polynomial ------------------------------

bool criterion_d3_charpoly(std::ostream& log) {
  for (int q : {2, 3, 4, 5}) {
    CoreGraph core = extract_core(build_diagram(q, enumerate_monic_primes(q, 3)[0]));
    auto c = adjacency_charpoly(core.graph);
    long long mid = static_cast<long long>(q + 1) * (q + 1) - 2;
    bool match = c.size() == 5 && c[4] == BigRat(1) && c[3] == BigRat(0) &&
                 c[2] == BigRat(-to_big(mid)) && c[1] == BigRat(0) && c[0] == BigRat(1);
    if (!match) {
      log << "q=" << q << ": charpoly differs from x^4-((q+1)^2-2)x^2+1";
      return false;
    }
    if (!cusp_spectrum(core.graph, core.boundary).empty()) {
      log << "q=" << q << ": discrete spectrum not empty";
      return false;
    }
  }
  log << "exact charpoly and empty cusp spectrum for q in {2,3,4,5}";
  return true;
}

// ---- criterion 4: counting formulas ---------------------------------------------

bool criterion_counting(std::ostream& log) {
  struct Item {
    int q, d;
    FqPoly p;
  };
  std::vector<Item> items;
  for (int q : {2, 3, 4})
    for (int d = 3; d <= 6; ++d)
      for (const FqPoly& p : enumerate_monic_primes(q, d)) items.push_back({q, d, p});
  std::vector<std::string> errors(items.size());
  parallel_over(items.size(), [&](size_t i) {
    Failure fail;
    const auto& [q, d, p] = items[i];
    ClosedForms cf = closed_forms(q, d);
    DrinfeldDiagram dg = build_diagram(q, p);
    CoreGraph core = extract_core(dg);
    auto check = [&](bool cond, const char* what) {
      if (!cond) {
        fail.failed = true;
        fail.msg << what << "; ";
      }
    };
    check(BigInt(core.graph.num_vertices()) == cf.core_vertex_count, "vertex count");
    check(core_inverse_weight_sum(dg) == cf.core_inverse_weight_sum, "inverse-weight sum");
    BigInt vp = 1, ep = 1;
    for (int v = 0; v < core.graph.num_vertices(); ++v) vp *= to_big(core.graph.vertex_weight[v]);
    for (const auto& e : core.graph.edges) ep *= to_big(e.weight);
    check(make_rat(vp, ep) == BigRat(cf.weight_product_ratio), "weight-product ratio");
    check(total_inverse_weight_sum(dg) == cf.total_inverse_weight, "volume identity");
    if (fail.failed) errors[i] = "q=" + std::to_string(q) + " p=" + p.to_string() + ": " + fail.msg.str();
  });
  int count = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    if (!errors[i].empty()) {
      log << errors[i];
      return false;
    }
    ++count;
  }
  log << count << " primes across q in {2,3,4}, d <= 6: all four formulas exact";
  return true;
}

// ---- criterion 5: C_q table -------------------------------------------------------

bool criterion_cq_table(std::ostream& log) {
  const std::vector<std::pair<int, double>> table = {
      {2, 0.837}, {3, 1.216}, {4, 1.483}, {5, 1.691},  {7, 2.008},
      {8, 2.135}, {9, 2.247}, {11, 2.439}, {13, 2.601}, {16, 2.802}};
  for (auto [q, expect] : table) {
    double got = cq(q, 1e-6);
    if (std::abs(got - expect) > 1e-3) {
      log << "C_" << q << " = " << got << " vs table " << expect;
      return false;
    }
  }
  log << "all ten tabulated values within 0.001";
  return true;
}

// ---- criterion 6: Ramanujan / interlacing bounds ----------------------------------

bool criterion_bounds(std::ostream& log) {
  struct Item {
    int q;
    FqPoly p;
  };
  std::vector<Item> items;
  for (int q : {2, 3})
    for (int d = 3; d <= 7; ++d)
      for (const FqPoly& p : enumerate_monic_primes(q, d)) items.push_back({q, p});
  std::vector<std::string> errors(items.size());
  parallel_over(items.size(), [&](size_t i) {
    int q = items[i].q;
    CoreGraph core = extract_core(build_diagram(q, items[i].p));
    SpectralReport rep = spectral_report(core, q);
    double sq2 = 2 * std::sqrt(static_cast<double>(q));
    std::ostringstream bad;
    for (double nu : rep.cusp_eigs)
      if (std::abs(nu) > sq2 + 1e-8) bad << "cusp eigenvalue " << nu << "; ";
    if (rep.laplacian_eigs[1] < q - sq2 - 1e-8) bad << "gamma_2 bound; ";
    WeylDecomposition wd = weyl_decomposition_check(rep.shifted_eigs, rep.laplacian_eigs);
    if (!wd.interlacing_ok) bad << "alpha interlacing; ";
    if (!wd.epsilon_ok) bad << "epsilon sum " << wd.epsilon_sum << "; ";
    if (!bad.str().empty())
      errors[i] = "q=" + std::to_string(q) + " p=" + items[i].p.to_string() + ": " + bad.str();
  });
  for (const auto& e : errors)
    if (!e.empty()) {
      log << e;
      return false;
    }
  log << items.size() << " primes across q in {2,3}, d <= 7: all bounds hold";
  return true;
}

// ---- criterion 7: component group at p --------------------------------------------

bool criterion_component_group_at_p(std::ostream& log) {
  // the p-fibre dual graph and N(p) depend on p only through (q, deg p), so
  // one banana per degree covers every prime of that degree
  int primes_covered = 0;
  for (int q : {2, 3}) {
    for (int d = 3; d <= 8; ++d) {
      ClosedForms cf = closed_forms(q, d);
      const auto& primes = enumerate_monic_primes(q, d);
      primes_covered += static_cast<int>(primes.size());
      WeightedGraph banana = build_p_fiber_graph(q, primes[0]);
      BigInt order = discriminant(banana, /*with_divisors=*/false).order;
      if (order != cf.component_group_at_p) {
        log << "q=" << q << " d=" << d << ": banana discriminant " << to_string(order)
            << " != N(p) = " << to_string(cf.component_group_at_p);
        return false;
      }
      BigInt sub = discriminant(subdivide(banana), /*with_divisors=*/false).order;
      if (sub != order) {
        log << "q=" << q << " d=" << d << ": subdivision changed the discriminant";
        return false;
      }
    }
  }
  log << "N(p) and subdivision invariance, q in {2,3}, d <= 8 (" << primes_covered
      << " primes via per-degree identity)";
  return true;
}

// ---- criterion 8: growth law --------------------------------------------------------

bool criterion_growth_law(std::ostream& log) {
  ScanOptions opt;
  opt.jobs = kJobs;
  std::vector<ScanRow> rows = scan(2, 5, 8, opt);
  std::map<int, std::pair<double, int>> acc;  // degree -> (ratio sum, count)
  for (const auto& r : rows) {
    if (!r.ok()) {
      log << "scan row failed: " << r.prime << ": " << r.error;
      return false;
    }
    acc[r.d].first += r.ratio;
    acc[r.d].second += 1;
  }
  std::map<int, double> mean;
  for (auto& [d, s] : acc) mean[d] = s.first / s.second;
  std::ostringstream seq;
  for (int d = 5; d <= 8; ++d) seq << "mean(" << d << ")=" << mean[d] << " ";
  for (int d = 5; d <= 8; ++d)
    if (mean[d] < 0.6 || mean[d] > 1.4) {
      log << "per-degree mean out of [0.6, 1.4]: " << seq.str();
      return false;
    }
  if (!(std::abs(mean[7] - 1) <= std::abs(mean[6] - 1) &&
        std::abs(mean[8] - 1) <= std::abs(mean[7] - 1))) {
    log << "means do not move monotonically toward 1 from d=6: " << seq.str();
    return false;
  }
  log << rows.size() << " primes, both pipelines bit-exact; " << seq.str();
  return true;
}

// ---- criterion 9: cusp-count growth --------------------------------------------------

bool criterion_cusp_count(std::ostream& log) {
  struct Item {
    FqPoly p;
    int d;
  };
  std::vector<Item> items;
  for (int d = 4; d <= 7; ++d)
    for (const FqPoly& p : enumerate_monic_primes(2, d)) items.push_back({p, d});
  std::vector<int> dev(items.size(), 0);
  parallel_over(items.size(), [&](size_t i) {
    CoreGraph core = extract_core(build_diagram(2, items[i].p));
    SpectralReport rep = spectral_report(core, 2);
    dev[i] = std::abs(rep.n - rep.m - 2 * items[i].d);
  });
  int worst = 0;
  for (size_t i = 0; i < items.size(); ++i) {
    worst = std::max(worst, dev[i]);
    if (dev[i] > 4) {
      log << "p=" << items[i].p.to_string() << ": |n - m - 2d| = " << dev[i];
      return false;
    }
  }
  log << items.size() << " primes, max |n - m - 2d| = " << worst << " (bound 4)";
  return true;
}

// ---- criterion 10: equidistribution ---------------------------------------------------

bool criterion_equidistribution(std::ostream& log) {
  for (int q : FqField::kSupportedQ) {
    MuQMeasure mu(q);
    if (std::abs(mu.total_mass(1e-9) - 1.0) > 1e-8) {
      log << "mu_" << q << " mass differs from 1";
      return false;
    }
  }
  auto pooled_ks = [&](int d) {
    std::vector<FqPoly> primes = enumerate_monic_primes(2, d);
    std::vector<std::vector<double>> per(primes.size());
    parallel_over(primes.size(), [&](size_t i) {
      CoreGraph core = extract_core(build_diagram(2, primes[i]));
      per[i] = cusp_spectrum(core.graph, core.boundary);
    });
    std::vector<double> pool;
    for (auto& v : per) pool.insert(pool.end(), v.begin(), v.end());
    return equidistribution_report(pool, 2).ks_distance;
  };
  std::map<int, double> ks;
  for (int d = 5; d <= 8; ++d) ks[d] = pooled_ks(d);
  std::ostringstream seq;
  for (int d = 5; d <= 8; ++d) seq << "KS(" << d << ")=" << ks[d] << " ";
  if (!(ks[8] < ks[5])) {
    log << "KS(d=8) not below KS(d=5): " << seq.str();
    return false;
  }
  log << "mu_q mass = 1 for all q; " << seq.str();
  return true;
}

struct Criterion {
  int id;
  const char* title;
  std::function<bool(std::ostream&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }

  std::vector<Criterion> criteria = {
      {1, "exact matrix-tree identity", criterion_matrix_tree},
      {2, "banana closed forms", criterion_banana},
      {3, "d=3 characteristic polynomial", criterion_d3_charpoly},
      {4, "counting formulas", criterion_counting},
      {5, "C_q table", criterion_cq_table},
      {6, "Ramanujan / interlacing bounds", criterion_bounds},
      {7, "component group at p", criterion_component_group_at_p},
      {8, "growth law", criterion_growth_law},
      {9, "cusp-count growth", criterion_cusp_count},
      {10, "equidistribution", criterion_equidistribution},
  };

  bool all_ok = true;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto t0 = std::chrono::steady_clock::now();
    std::ostringstream log;
    bool ok = false;
    try {
      ok = c.run(log);
    } catch (const std::exception& ex) {
      log << "exception: " << ex.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << c.id << " (" << c.title << "): " << (ok ? "PASS" : "FAIL")
              << " [" << std::fixed << std::setprecision(1) << secs << "s] " << log.str()
              << std::endl;
    all_ok = all_ok && ok;
  }
  return all_ok ? 0 : 1;
}
