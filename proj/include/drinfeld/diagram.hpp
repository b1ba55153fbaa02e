#pragma once

// The weighted quotient graph of the Bruhat-Tits tree under Gamma_0(n),
// built layer by layer from orbits on P^1(A/n).
//
// Vertices of type i are G_i-orbits, edges of type i are (G_i cap G_{i+1})-
// orbits; the origin (terminus) of an edge orbit is the type-i (type-(i+1))
// vertex orbit containing it. Beyond type d-1 the graph is a disjoint union
// of half-lines with weight ratio q; the builder stores extra_depth layers
// past d-1 and verifies the bijections instead of trusting them. The finite
// core is what remains after removing every half-line tail; each removed
// half-line is recorded as a cusp with its attachment vertex.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/orbit.hpp"
#include "drinfeld/weighted_graph.hpp"

namespace drinfeld {

struct DrinfeldDiagram {
  int q = 0;
  FqPoly modulus;
  int d = 0;
  int kappa = 0;
  int extra_depth = 0;
  bool modulus_prime = false;

  struct Vertex {
    int type;
    long long weight;
    bool infinity_chain;            // orbit contains (1 : 0)
    std::vector<uint32_t> orbit;    // point indices, sorted
  };
  struct Edge {
    int type;
    int origin, terminus;
    long long weight;
  };
  struct Cusp {
    int attach;                 // core vertex the half-line is attached to
    std::vector<int> tail;      // stored tail vertices, outward from attach
  };

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<Cusp> cusps;
  std::vector<int> core_vertices;   // sorted diagram vertex ids
  std::vector<int> core_boundary;   // cusp attachment vertices, sorted, deduped

  int max_type() const { return d - 1 + extra_depth; }

  bool in_core(int v) const {
    return std::binary_search(core_vertices.begin(), core_vertices.end(), v);
  }
};

struct CoreGraph {
  WeightedGraph graph;
  std::vector<int> boundary;     // local vertex ids of cusp attachments
  std::vector<int> diagram_ids;  // local id -> diagram vertex id
};

namespace detail {

struct IncidentEdge {
  int edge;
  int other;
};

inline std::vector<std::vector<IncidentEdge>> diagram_incidence(const DrinfeldDiagram& dg) {
  std::vector<std::vector<IncidentEdge>> inc(dg.vertices.size());
  for (int e = 0; e < static_cast<int>(dg.edges.size()); ++e) {
    inc[dg.edges[e].origin].push_back({e, dg.edges[e].terminus});
    inc[dg.edges[e].terminus].push_back({e, dg.edges[e].origin});
  }
  return inc;
}

}  // namespace detail

inline DrinfeldDiagram build_diagram(int q, const FqPoly& n, int extra_depth = 2) {
  if (!FqField::supported(q)) throw std::runtime_error("unsupported q: " + std::to_string(q));
  if (n.q() != q) throw std::runtime_error("modulus field does not match q");
  if (!n.is_monic()) throw std::runtime_error("modulus must be monic");
  if (n.degree() < 3)
    throw std::runtime_error("degree too small: deg(n) >= 3 required, got " +
                             std::to_string(n.degree()));
  if (extra_depth < 1) throw std::runtime_error("extra_depth must be >= 1");

  DrinfeldDiagram dg;
  dg.q = q;
  dg.modulus = n;
  dg.d = n.degree();
  dg.kappa = (dg.d % 2 == 0) ? 1 : 0;
  dg.extra_depth = extra_depth;

  P1Space space(n);
  dg.modulus_prime = space.modulus().prime;
  const int D = dg.d - 1 + extra_depth;
  const uint32_t inf = space.infinity_index();

  // vertex layers: G_i orbits
  std::vector<OrbitPartition> vparts;
  vparts.reserve(D + 1);
  for (int i = 0; i <= D; ++i)
    vparts.push_back(orbit_partition({i, q, /*edge_group=*/false}, space));

  std::vector<std::vector<int>> vertex_id(D + 1);  // layer, block -> diagram id
  for (int i = 0; i <= D; ++i) {
    vertex_id[i].resize(vparts[i].blocks.size());
    for (size_t b = 0; b < vparts[i].blocks.size(); ++b) {
      vertex_id[i][b] = static_cast<int>(dg.vertices.size());
      bool is_inf = std::binary_search(vparts[i].blocks[b].begin(), vparts[i].blocks[b].end(), inf);
      dg.vertices.push_back({i, vparts[i].weight[b], is_inf, vparts[i].blocks[b]});
    }
  }

  // edge layers: type 0 uses the Borel, type i >= 1 reuses the G_i partition
  for (int i = 0; i < D; ++i) {
    const OrbitPartition* epart;
    OrbitPartition borel;
    if (i == 0) {
      borel = orbit_partition({0, q, /*edge_group=*/true}, space);
      epart = &borel;
    } else {
      epart = &vparts[i];
    }
    for (size_t b = 0; b < epart->blocks.size(); ++b) {
      uint32_t rep = epart->blocks[b][0];
      int o = vertex_id[i][vparts[i].block_of[rep]];
      int t = vertex_id[i + 1][vparts[i + 1].block_of[rep]];
      long long w = epart->weight[b];
      if (dg.vertices[o].weight % w != 0 || dg.vertices[t].weight % w != 0)
        throw std::runtime_error("edge weight does not divide endpoint weights");
      if (i >= 1 && w != dg.vertices[o].weight)
        throw std::runtime_error("type >= 1 edge weight differs from origin weight");
      dg.edges.push_back({i, o, t, w});
    }
  }

  // regularity sum_{t(e)=v} w(v)/w(e) = q+1 at every vertex with all edges stored
  auto inc = detail::diagram_incidence(dg);
  for (size_t v = 0; v < dg.vertices.size(); ++v) {
    if (dg.vertices[v].type >= D) continue;
    BigRat deg(0);
    for (const auto& ie : inc[v])
      deg += make_rat(dg.vertices[v].weight, dg.edges[ie.edge].weight);
    if (deg != BigRat(q + 1))
      throw std::runtime_error("regularity violated at vertex " + std::to_string(v));
  }

  // half-line layers: for i in [d-1, D-1] both endpoint maps must be bijections
  // with weight ratio q
  for (int i = dg.d - 1; i < D; ++i) {
    size_t nv = vparts[i].blocks.size();
    if (vparts[i + 1].blocks.size() != nv)
      throw std::runtime_error("half-line verification failed: layer sizes differ at type " +
                               std::to_string(i));
    std::set<int> seen_o, seen_t;
    for (const auto& e : dg.edges) {
      if (e.type != i) continue;
      seen_o.insert(e.origin);
      seen_t.insert(e.terminus);
      if (e.weight != dg.vertices[e.origin].weight ||
          dg.vertices[e.terminus].weight != static_cast<long long>(q) * e.weight)
        throw std::runtime_error("half-line verification failed: weight ratio at type " +
                                 std::to_string(i));
    }
    if (seen_o.size() != nv || seen_t.size() != nv)
      throw std::runtime_error("half-line verification failed: maps not bijective at type " +
                               std::to_string(i));
  }

  // ---- cusp identification ----------------------------------------------
  // Every type-(d-1) vertex heads an upward half-line. Walk back through
  // vertices with exactly two incident edges while the half-line weight
  // profile w(e_n) = w(v_n), w(v_{n+1}) = q w(e_n) holds; the first vertex
  // that breaks the walk is the attachment.
  std::vector<char> in_tail(dg.vertices.size(), 0);
  std::vector<std::pair<int, std::vector<int>>> raw_cusps;  // attach, chain from attach upward

  auto upward_chain = [&](int start) {
    // follow the unique type-increasing edges from a type-(d-1) vertex
    std::vector<int> chain;
    int cur = start;
    for (int t = dg.d - 1; t < D; ++t) {
      int next = -1;
      for (const auto& ie : inc[cur]) {
        const auto& e = dg.edges[ie.edge];
        if (e.type == t && e.origin == cur) {
          next = e.terminus;
          break;
        }
      }
      if (next < 0) throw std::runtime_error("half-line verification failed: missing out-edge");
      chain.push_back(next);
      cur = next;
    }
    return chain;
  };

  for (size_t b = 0; b < vparts[dg.d - 1].blocks.size(); ++b) {
    int head = vertex_id[dg.d - 1][b];
    int entered_via = -1;  // the upward out-edge of the head
    for (const auto& ie : inc[head])
      if (dg.edges[ie.edge].type == dg.d - 1 && dg.edges[ie.edge].origin == head)
        entered_via = ie.edge;

    std::vector<int> back;  // chain vertices from head toward the attachment
    int cur = head;
    while (inc[cur].size() == 2) {
      int next_edge = -1, next_vertex = -1;
      for (const auto& ie : inc[cur])
        if (ie.edge != entered_via) {
          next_edge = ie.edge;
          next_vertex = ie.other;
        }
      if (next_edge < 0) break;
      // cur plays v_{n+1} and next_vertex plays v_n on the half-line
      if (dg.edges[next_edge].weight != dg.vertices[next_vertex].weight ||
          dg.vertices[cur].weight != static_cast<long long>(q) * dg.edges[next_edge].weight)
        break;
      back.push_back(cur);
      in_tail[cur] = 1;
      cur = next_vertex;
      entered_via = next_edge;
      if (in_tail[cur]) throw std::runtime_error("half-line verification failed: chains merge");
    }
    int attach = back.empty() ? head : cur;

    std::vector<int> outward(back.rbegin(), back.rend());
    for (int v : upward_chain(head)) {
      outward.push_back(v);
      in_tail[v] = 1;
    }
    raw_cusps.push_back({attach, std::move(outward)});
  }

  std::sort(raw_cusps.begin(), raw_cusps.end());
  for (auto& [attach, tail] : raw_cusps) dg.cusps.push_back({attach, std::move(tail)});

  for (size_t v = 0; v < dg.vertices.size(); ++v)
    if (!in_tail[v] && dg.vertices[v].type <= dg.d - 1)
      dg.core_vertices.push_back(static_cast<int>(v));
  for (const auto& c : dg.cusps) dg.core_boundary.push_back(c.attach);
  std::sort(dg.core_boundary.begin(), dg.core_boundary.end());
  dg.core_boundary.erase(std::unique(dg.core_boundary.begin(), dg.core_boundary.end()),
                         dg.core_boundary.end());
  for (int a : dg.core_boundary)
    if (!dg.in_core(a)) throw std::runtime_error("cusp attachment fell outside the core");

  return dg;
}

// Materialize the finite core as a standalone weighted graph.
inline CoreGraph extract_core(const DrinfeldDiagram& dg) {
  CoreGraph core;
  std::vector<int> local(dg.vertices.size(), -1);
  for (int v : dg.core_vertices) {
    local[v] = core.graph.add_vertex(dg.vertices[v].weight);
    core.diagram_ids.push_back(v);
  }
  for (const auto& e : dg.edges)
    if (local[e.origin] >= 0 && local[e.terminus] >= 0)
      core.graph.add_edge(local[e.origin], local[e.terminus], e.weight);
  for (int b : dg.core_boundary) {
    if (local[b] < 0) throw std::runtime_error("boundary vertex is not a core vertex");
    core.boundary.push_back(local[b]);
  }

  if (!core.graph.connected()) throw std::runtime_error("disconnected core");
  if (dg.modulus_prime) {
    if (core.boundary.size() != 2)
      throw std::runtime_error("prime core must have exactly two boundary vertices");
    for (int b : core.boundary)
      if (core.graph.degree(b) != BigRat(dg.q))
        throw std::runtime_error("boundary vertex degree != q");
  }
  return core;
}

// Dual graph of the fibre at p itself: two vertices joined by s(p) edges.
// For even deg(p) all edges have weight 1; for odd, one edge has weight q+1.
inline WeightedGraph build_p_fiber_graph(int q, const FqPoly& p) {
  if (!is_irreducible(p) || !p.is_monic())
    throw std::runtime_error("p-fiber graph needs a monic prime");
  int d = p.degree();
  BigInt absp = big_pow(BigInt(q), d);
  BigInt s = (d % 2 == 0) ? big_divexact(absp - 1, BigInt(q) * q - 1)
                          : big_divexact(absp - q, BigInt(q) * q - 1) + 1;
  if (!s.fits_slong_p()) throw std::runtime_error("p-fiber graph too large");
  long long sn = s.get_si();
  WeightedGraph g;
  g.add_vertex(1);
  g.add_vertex(1);
  for (long long i = 0; i < sn; ++i)
    g.add_edge(0, 1, (d % 2 == 1 && i == 0) ? q + 1 : 1);
  return g;
}

// ---- exact inverse-weight bookkeeping with cusp tails ------------------------

inline BigRat core_inverse_weight_sum(const DrinfeldDiagram& dg) {
  BigRat s(0);
  for (int v : dg.core_vertices) s += make_rat(1, dg.vertices[v].weight);
  return s;
}

// Sum of 1/w over the whole infinite diagram: core plus the closed-form
// geometric tail 1/(w0 (q-1)) of each cusp with attachment weight w0.
inline BigRat total_inverse_weight_sum(const DrinfeldDiagram& dg) {
  BigRat s = core_inverse_weight_sum(dg);
  for (const auto& c : dg.cusps)
    s += make_rat(1, dg.vertices[c.attach].weight * static_cast<long long>(dg.q - 1));
  return s;
}

// Right side of the volume identity: 2 [Gamma : Gamma_0(n)] |Z cap Gamma_0(n)|
// over (q^2-1)(q-1)^2, with index |P^1(A/n)| and center order q-1.
inline BigRat expected_total_inverse_weight(int q, uint64_t p1_size) {
  BigInt num = BigInt(2) * BigInt(static_cast<unsigned long>(p1_size)) * BigInt(q - 1);
  BigInt den = (BigInt(q) * q - 1) * BigInt(q - 1) * BigInt(q - 1);
  return make_rat(num, den);
}

// Bipartite balance sum_{v in I} 1/w = sum_{v in O} 1/w with exact tails.
inline std::pair<BigRat, BigRat> parity_inverse_weight_sums(const DrinfeldDiagram& dg) {
  BigRat even(0), odd(0);
  for (int v : dg.core_vertices) {
    BigRat t = make_rat(1, dg.vertices[v].weight);
    (dg.vertices[v].type % 2 == 0 ? even : odd) += t;
  }
  BigInt q2m1 = BigInt(dg.q) * dg.q - 1;
  for (const auto& c : dg.cusps) {
    long long w0 = dg.vertices[c.attach].weight;
    BigRat same = make_rat(BigInt(1), BigInt(static_cast<long>(w0)) * q2m1);
    BigRat opposite = make_rat(BigInt(dg.q), BigInt(static_cast<long>(w0)) * q2m1);
    if (dg.vertices[c.attach].type % 2 == 0) {
      even += same;
      odd += opposite;
    } else {
      odd += same;
      even += opposite;
    }
  }
  return {even, odd};
}

}  // namespace drinfeld
