#pragma once

// Weighted graph data model: vertices and paired oriented edges, each with a
// positive integer weight. Only the positive orientation E^+ is stored; the
// inverse of edge e has w(e-bar) = w(e) and swapped endpoints. Loops are
// rejected; multi-edges are allowed.

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "drinfeld/bigint.hpp"

namespace drinfeld {

struct WeightedGraph {
  struct Edge {
    int origin;
    int terminus;
    long long weight;
  };

  std::vector<long long> vertex_weight;
  std::vector<Edge> edges;

  int num_vertices() const { return static_cast<int>(vertex_weight.size()); }
  int num_edges() const { return static_cast<int>(edges.size()); }

  int add_vertex(long long w) {
    if (w <= 0) throw std::runtime_error("vertex weight must be positive");
    vertex_weight.push_back(w);
    return num_vertices() - 1;
  }
  int add_edge(int o, int t, long long w) {
    if (o == t) throw std::runtime_error("loop edge not allowed");
    if (o < 0 || t < 0 || o >= num_vertices() || t >= num_vertices())
      throw std::runtime_error("edge endpoint out of range");
    if (w <= 0) throw std::runtime_error("edge weight must be positive");
    edges.push_back({o, t, w});
    return num_edges() - 1;
  }

  void validate() const {
    for (long long w : vertex_weight)
      if (w <= 0) throw std::runtime_error("vertex weight must be positive");
    for (const Edge& e : edges) {
      if (e.origin == e.terminus) throw std::runtime_error("loop edge not allowed");
      if (e.origin < 0 || e.terminus < 0 || e.origin >= num_vertices() ||
          e.terminus >= num_vertices())
        throw std::runtime_error("edge endpoint out of range");
      if (e.weight <= 0) throw std::runtime_error("edge weight must be positive");
    }
  }

  // adjacency as (neighbor, edge id) ignoring orientation
  std::vector<std::vector<std::pair<int, int>>> adjacency() const {
    std::vector<std::vector<std::pair<int, int>>> adj(num_vertices());
    for (int e = 0; e < num_edges(); ++e) {
      adj[edges[e].origin].push_back({edges[e].terminus, e});
      adj[edges[e].terminus].push_back({edges[e].origin, e});
    }
    return adj;
  }

  bool connected() const {
    if (num_vertices() == 0) return true;
    auto adj = adjacency();
    std::vector<char> seen(num_vertices(), 0);
    std::queue<int> bfs;
    bfs.push(0);
    seen[0] = 1;
    int count = 1;
    while (!bfs.empty()) {
      int v = bfs.front();
      bfs.pop();
      for (auto [u, e] : adj[v])
        if (!seen[u]) {
          seen[u] = 1;
          ++count;
          bfs.push(u);
        }
    }
    return count == num_vertices();
  }

  // weighted degree deg(v) = sum over edges with t(e) = v of w(v)/w(e),
  // counting both stored edges and their inverses
  BigRat degree(int v) const {
    BigRat d = 0;
    for (const Edge& e : edges) {
      if (e.origin == v) d += make_rat(vertex_weight[v], e.weight);
      if (e.terminus == v) d += make_rat(vertex_weight[v], e.weight);
    }
    return d;
  }

  int cycle_rank() const { return num_edges() - num_vertices() + 1; }
};

}  // namespace drinfeld
