#pragma once

// First homology of a weighted graph. A cycle is a map E^+ -> Z with zero
// boundary at every vertex (inverse edges carry the negated value). The basis
// consists of the fundamental cycles of a BFS spanning tree, so entries are
// in {-1, 0, 1} and the count is |E^+| - |V| + 1.

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "drinfeld/exact_linalg.hpp"
#include "drinfeld/weighted_graph.hpp"

namespace drinfeld {

using Cycle = std::vector<long long>;  // indexed by positive edge id

struct CycleBasis {
  std::vector<Cycle> cycles;
  int rank() const { return static_cast<int>(cycles.size()); }
};

// boundary of a chain: per-vertex signed sums
inline std::vector<long long> chain_boundary(const WeightedGraph& g, const Cycle& c) {
  if (c.size() != static_cast<size_t>(g.num_edges()))
    throw std::runtime_error("chain length does not match edge count");
  std::vector<long long> b(g.num_vertices(), 0);
  for (int e = 0; e < g.num_edges(); ++e) {
    b[g.edges[e].terminus] += c[e];
    b[g.edges[e].origin] -= c[e];
  }
  return b;
}

inline bool is_cycle(const WeightedGraph& g, const Cycle& c) {
  for (long long x : chain_boundary(g, c))
    if (x != 0) return false;
  return true;
}

inline CycleBasis cycle_basis(const WeightedGraph& g) {
  if (!g.connected()) throw std::runtime_error("disconnected graph");
  int n = g.num_vertices();
  auto adj = g.adjacency();

  // BFS tree: parent edge of each vertex, +1 if tree edge points toward the root side
  std::vector<int> parent_edge(n, -1), parent(n, -1), depth(n, 0);
  std::vector<char> in_tree(g.num_edges(), 0);
  std::vector<char> seen(n, 0);
  std::queue<int> bfs;
  if (n == 0) return {};
  bfs.push(0);
  seen[0] = 1;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (auto [u, e] : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        parent[u] = v;
        parent_edge[u] = e;
        depth[u] = depth[v] + 1;
        in_tree[e] = 1;
        bfs.push(u);
      }
  }

  // walk from v toward the root, accumulating +-1 tree-edge coefficients
  auto add_path_up = [&](Cycle& c, int v, int steps, long long sign) {
    for (int s = 0; s < steps; ++s) {
      int e = parent_edge[v];
      // traversing from v to parent(v): positive direction if v is the terminus
      c[e] += (g.edges[e].terminus == v) ? -sign : sign;
      v = parent[v];
    }
    return v;
  };

  CycleBasis basis;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (in_tree[e]) continue;
    Cycle c(g.num_edges(), 0);
    c[e] = 1;  // traverse e from origin to terminus, then tree path terminus -> origin
    int a = g.edges[e].terminus, b = g.edges[e].origin;
    int da = depth[a], db = depth[b];
    if (da > db) a = add_path_up(c, a, da - db, 1);
    if (db > da) b = add_path_up(c, b, db - da, -1);
    while (a != b) {
      a = add_path_up(c, a, 1, 1);
      b = add_path_up(c, b, 1, -1);
    }
    basis.cycles.push_back(std::move(c));
  }
  if (basis.rank() != g.cycle_rank())
    throw std::runtime_error("internal: cycle basis rank mismatch");
  return basis;
}

// Gram matrix of cycles under the edge-weighted pairing
// (phi, psi) = sum_{e in E^+} phi(e) psi(e) w(e).
inline BigMat gram_matrix(const WeightedGraph& g, const CycleBasis& basis) {
  int h = basis.rank();
  BigMat gram(h, h);
  for (int i = 0; i < h; ++i)
    for (int j = i; j < h; ++j) {
      BigInt s = 0;
      for (int e = 0; e < g.num_edges(); ++e) {
        long long prod = basis.cycles[i][e] * basis.cycles[j][e];
        if (prod != 0) s += to_big(prod) * to_big(g.edges[e].weight);
      }
      gram.at(i, j) = s;
      gram.at(j, i) = s;
    }
  return gram;
}

// phi* (e) = w(e) phi(e): the harmonic cochain attached to a cycle. The
// result satisfies sum_{t(e)=v} (w(v)/w(e)) phi*(e) = 0 at every vertex and
// pairs identically to phi under sum phi* psi* / w(e).
inline std::vector<long long> to_harmonic_cochain(const WeightedGraph& g, const Cycle& cycle) {
  if (cycle.size() != static_cast<size_t>(g.num_edges()))
    throw std::runtime_error("chain length does not match edge count");
  if (!is_cycle(g, cycle)) throw std::runtime_error("not a cycle: nonzero boundary");
  std::vector<long long> f(g.num_edges());
  for (int e = 0; e < g.num_edges(); ++e) f[e] = g.edges[e].weight * cycle[e];
  return f;
}

// vertex sums sum_{t(e)=v} (w(v)/w(e)) f(e), with f(e-bar) = -f(e)
inline std::vector<BigRat> harmonic_vertex_sums(const WeightedGraph& g,
                                                const std::vector<long long>& f) {
  std::vector<BigRat> s(g.num_vertices(), BigRat(0));
  for (int e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edges[e];
    s[ed.terminus] += make_rat(to_big(g.vertex_weight[ed.terminus]) * to_big(f[e]),
                               to_big(ed.weight));
    s[ed.origin] -= make_rat(to_big(g.vertex_weight[ed.origin]) * to_big(f[e]),
                             to_big(ed.weight));
  }
  return s;
}

}  // namespace drinfeld
