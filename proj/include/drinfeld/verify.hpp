#pragma once

// The invariant suite run by `verify`: structural diagram checks, the volume
// and bipartite-balance identities with exact cusp tails, core counting
// formulas for prime modulus, the exact matrix-tree identity, agreement of
// the two discriminant pipelines, and the spectral bound checks.

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "drinfeld/closed_forms.hpp"
#include "drinfeld/diagram.hpp"
#include "drinfeld/discriminant.hpp"
#include "drinfeld/spectra.hpp"

namespace drinfeld {

struct CheckResult {
  std::string name;
  bool ok;
  std::string detail;
};

class CheckList {
 public:
  void run(const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    CheckResult r;
    r.name = name;
    try {
      auto [ok, detail] = fn();
      r.ok = ok;
      r.detail = detail;
    } catch (const std::exception& ex) {
      r.ok = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    results.push_back(std::move(r));
  }
  bool all_ok() const {
    for (const auto& r : results)
      if (!r.ok) return false;
    return true;
  }
  std::vector<CheckResult> results;
};

inline uint64_t p1_size_from_modulus(const FqPoly& n) {
  const FqField& F = n.field();
  uint64_t size = 1;
  for (int i = 0; i < n.degree(); ++i) size *= F.q();
  uint64_t expected = size;
  for (auto& [p, e] : factor_monic(n)) {
    (void)e;
    uint64_t absp = 1;
    for (int i = 0; i < p.degree(); ++i) absp *= F.q();
    expected = expected / absp * (absp + 1);
  }
  return expected;
}

inline std::vector<CheckResult> verify_diagram(const DrinfeldDiagram& dg, int exact_max_n = 100) {
  CheckList cl;
  const int q = dg.q;
  const int max_type = [&] {
    int mt = 0;
    for (const auto& v : dg.vertices) mt = std::max(mt, v.type);
    return mt;
  }();

  cl.run("no loops", [&]() -> std::pair<bool, std::string> {
    for (const auto& e : dg.edges)
      if (e.origin == e.terminus) return {false, "loop edge found"};
    return {true, ""};
  });

  cl.run("positive weights", [&]() -> std::pair<bool, std::string> {
    for (const auto& v : dg.vertices)
      if (v.weight <= 0) return {false, "non-positive vertex weight"};
    for (const auto& e : dg.edges)
      if (e.weight <= 0) return {false, "non-positive edge weight"};
    return {true, ""};
  });

  cl.run("edge weight divides endpoints", [&]() -> std::pair<bool, std::string> {
    for (const auto& e : dg.edges)
      if (dg.vertices[e.origin].weight % e.weight != 0 ||
          dg.vertices[e.terminus].weight % e.weight != 0)
        return {false, "divisibility fails"};
    return {true, ""};
  });

  cl.run("bipartite by type parity", [&]() -> std::pair<bool, std::string> {
    for (const auto& e : dg.edges)
      if (dg.vertices[e.terminus].type != dg.vertices[e.origin].type + 1)
        return {false, "edge does not join consecutive types"};
    return {true, ""};
  });

  cl.run("(q+1)-regularity", [&]() -> std::pair<bool, std::string> {
    auto inc = detail::diagram_incidence(dg);
    for (size_t v = 0; v < dg.vertices.size(); ++v) {
      if (dg.vertices[v].type >= max_type) continue;  // outer layer lacks stored edges
      BigRat deg(0);
      for (const auto& ie : inc[v]) deg += make_rat(dg.vertices[v].weight, dg.edges[ie.edge].weight);
      if (deg != BigRat(q + 1)) return {false, "degree != q+1 at vertex " + std::to_string(v)};
    }
    return {true, ""};
  });

  cl.run("edge weight equals origin weight for type >= 1", [&]() -> std::pair<bool, std::string> {
    for (const auto& e : dg.edges)
      if (e.type >= 1 && e.weight != dg.vertices[e.origin].weight)
        return {false, "w(e) != w(o(e))"};
    return {true, ""};
  });

  cl.run("half-line weight profile on tails",
         [&]() -> std::pair<bool, std::string> {
           for (const auto& e : dg.edges) {
             bool o_core = dg.in_core(e.origin), t_core = dg.in_core(e.terminus);
             if (o_core && t_core) continue;
             int low = e.origin, high = e.terminus;
             if (!o_core && t_core) std::swap(low, high);  // cusp runs outward from the core
             else if (!o_core && !t_core && dg.vertices[e.origin].type > dg.vertices[e.terminus].type)
               std::swap(low, high);
             if (e.weight != dg.vertices[low].weight ||
                 dg.vertices[high].weight != static_cast<long long>(q) * e.weight)
               return {false, "tail edge weight profile broken"};
           }
           return {true, ""};
         });

  cl.run("bipartite balance sum_I 1/w = sum_O 1/w",
         [&]() -> std::pair<bool, std::string> {
           auto [even, odd] = parity_inverse_weight_sums(dg);
           if (even != odd) return {false, even.get_str() + " != " + odd.get_str()};
           return {true, "both " + even.get_str()};
         });

  cl.run("total inverse weight equals volume formula", [&]() -> std::pair<bool, std::string> {
    BigRat total = total_inverse_weight_sum(dg);
    BigRat expect = expected_total_inverse_weight(q, p1_size_from_modulus(dg.modulus));
    if (total != expect) return {false, total.get_str() + " != " + expect.get_str()};
    return {true, total.get_str()};
  });

  CoreGraph core;
  bool have_core = false;
  cl.run("core extraction (connected, boundary structure)",
         [&]() -> std::pair<bool, std::string> {
           core = extract_core(dg);
           have_core = true;
           return {true,
                   std::to_string(core.graph.num_vertices()) + " vertices, " +
                       std::to_string(core.graph.num_edges()) + " edges"};
         });
  if (!have_core) return cl.results;

  if (dg.modulus_prime) {
    ClosedForms cf = closed_forms(q, dg.d);
    cl.run("core vertex count matches closed form", [&]() -> std::pair<bool, std::string> {
      if (BigInt(core.graph.num_vertices()) != cf.core_vertex_count)
        return {false, std::to_string(core.graph.num_vertices()) +
                           " != " + to_string(cf.core_vertex_count)};
      return {true, to_string(cf.core_vertex_count)};
    });
    cl.run("core inverse-weight sum matches closed form", [&]() -> std::pair<bool, std::string> {
      BigRat got = core_inverse_weight_sum(dg);
      if (got != cf.core_inverse_weight_sum)
        return {false, got.get_str() + " != " + cf.core_inverse_weight_sum.get_str()};
      return {true, got.get_str()};
    });
    cl.run("core weight-product ratio matches closed form", [&]() -> std::pair<bool, std::string> {
      BigInt vp = 1, ep = 1;
      for (int v = 0; v < core.graph.num_vertices(); ++v)
        vp *= BigInt(static_cast<long>(core.graph.vertex_weight[v]));
      for (const auto& e : core.graph.edges) ep *= BigInt(static_cast<long>(e.weight));
      BigRat ratio = make_rat(vp, ep);
      if (ratio != BigRat(cf.weight_product_ratio))
        return {false, ratio.get_str() + " != " + to_string(cf.weight_product_ratio)};
      return {true, ratio.get_str()};
    });
    cl.run("core cycle rank equals genus", [&]() -> std::pair<bool, std::string> {
      if (BigInt(core.graph.cycle_rank()) != cf.genus)
        return {false, std::to_string(core.graph.cycle_rank()) + " != " + to_string(cf.genus)};
      return {true, to_string(cf.genus)};
    });
  }

  cl.run("matrix-tree identity on core", [&]() -> std::pair<bool, std::string> {
    bool exact = core.graph.num_vertices() <= exact_max_n;
    MatrixTreeCheck mt = verify_matrix_tree_identity(core.graph, exact);
    if (!mt.ok) return {false, exact ? "exact mismatch" : "float mismatch"};
    return {true, exact ? "exact" : "float"};
  });

  cl.run("discriminant pipelines agree (Gram vs spectral)",
         [&]() -> std::pair<bool, std::string> {
           BigInt d1 = discriminant(core.graph, /*with_divisors=*/false).order;
           BigInt d2 = discriminant_via_spectrum(core.graph);
           if (d1 != d2) return {false, to_string(d1) + " != " + to_string(d2)};
           return {true, to_string(d1)};
         });

  cl.run("spectral bounds (Ramanujan window, interlacing)", [&]() -> std::pair<bool, std::string> {
    SpectralReport rep = spectral_report(core, q);
    if (!rep.bounds_ok) {
      std::string bad;
      for (const auto& b : rep.verdicts)
        if (!b.ok) bad += b.name + "; ";
      return {false, bad};
    }
    double sq2 = 2 * std::sqrt(static_cast<double>(q));
    for (double nu : rep.cusp_eigs)
      if (std::abs(nu) > sq2 + 1e-8) return {false, "cusp eigenvalue outside [-2 sqrt q, 2 sqrt q]"};
    double max_def = 0, total_def = 0;
    for (int v = 0; v < core.graph.num_vertices(); ++v) {
      double def = (q + 1.0) - to_double(core.graph.degree(v));
      max_def = std::max(max_def, def);
      total_def += def;
    }
    WeylDecomposition wd =
        weyl_decomposition_check(rep.shifted_eigs, rep.laplacian_eigs, 1e-8, max_def, total_def);
    if (!wd.ok()) return {false, "alpha/gamma interlacing failed"};
    return {true, "all " + std::to_string(rep.verdicts.size()) + " bounds hold, m=" +
                      std::to_string(rep.m)};
  });

  return cl.results;
}

}  // namespace drinfeld
