#pragma once

// Discriminant of a weighted graph and the weighted matrix-tree identity.
//
// The discriminant is |det| of the Gram matrix of a Z-basis of H_1 under the
// edge-weighted cycle pairing; it equals the order of the component group of
// the corresponding Jacobian. The identity verified here:
//
//   D_{G,w} * sum_v prod_{v' != v} w(v')  =  prod_{i} lambda_i * prod_{e in E^+} w(e)
//
// with lambda_i the nonzero eigenvalues of the weighted Laplacian
// Delta(v) = sum_{t(e)=v} (w(v)/w(e)) (v - o(e)).

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "drinfeld/exact_linalg.hpp"
#include "drinfeld/homology.hpp"
#include "drinfeld/jacobi.hpp"
#include "drinfeld/weighted_graph.hpp"

namespace drinfeld {

struct RatMat {
  int n = 0;
  std::vector<BigRat> a;
  explicit RatMat(int size) : n(size), a(static_cast<size_t>(size) * size, BigRat(0)) {}
  BigRat& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const BigRat& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
};

// A[v][u] = sum over edges u -> v (either orientation) of w(v)/w(e)
inline RatMat adjacency_matrix(const WeightedGraph& g) {
  RatMat A(g.num_vertices());
  for (const auto& e : g.edges) {
    A.at(e.terminus, e.origin) += make_rat(g.vertex_weight[e.terminus], e.weight);
    A.at(e.origin, e.terminus) += make_rat(g.vertex_weight[e.origin], e.weight);
  }
  return A;
}

// Delta = D - A with D = diag(deg v)
inline RatMat laplacian_matrix(const WeightedGraph& g) {
  RatMat L(g.num_vertices());
  for (const auto& e : g.edges) {
    L.at(e.terminus, e.origin) -= make_rat(g.vertex_weight[e.terminus], e.weight);
    L.at(e.origin, e.terminus) -= make_rat(g.vertex_weight[e.origin], e.weight);
    L.at(e.terminus, e.terminus) += make_rat(g.vertex_weight[e.terminus], e.weight);
    L.at(e.origin, e.origin) += make_rat(g.vertex_weight[e.origin], e.weight);
  }
  return L;
}

struct Discriminant {
  BigInt order;
  std::vector<BigInt> elementary_divisors;
};

// Gram-matrix route. h = 0 is an error unless the caller opts into the empty
// determinant convention (order 1, no divisors).
inline Discriminant discriminant(const WeightedGraph& g, bool with_divisors = true,
                                 bool allow_trivial = false) {
  if (!g.connected()) throw std::runtime_error("disconnected graph");
  CycleBasis basis = cycle_basis(g);
  if (basis.rank() == 0) {
    if (allow_trivial) return {BigInt(1), {}};
    throw std::runtime_error("empty homology: graph is a tree");
  }
  BigMat gram = gram_matrix(g, basis);
  Discriminant d;
  d.order = bareiss_det(gram);
  if (d.order < 0) d.order = -d.order;
  if (with_divisors) {
    d.elementary_divisors = smith_divisors(gram);
    BigInt prod = 1;
    for (const BigInt& e : d.elementary_divisors) prod *= e;
    if (prod != d.order) throw std::runtime_error("internal: SNF product != determinant");
  }
  return d;
}

// ---- exact spectral quantities ----------------------------------------------

// Least common multiple of the edge weights; W * Delta is an integer matrix.
inline BigInt laplacian_denominator(const WeightedGraph& g) {
  BigInt lcm = 1;
  for (const auto& e : g.edges) {
    BigInt w(static_cast<long>(e.weight));
    BigInt r;
    mpz_lcm(r.get_mpz_t(), lcm.get_mpz_t(), w.get_mpz_t());
    lcm = r;
  }
  return lcm;
}

inline BigMat scaled_laplacian(const WeightedGraph& g, const BigInt& scale) {
  int n = g.num_vertices();
  BigMat M(n, n);
  for (const auto& e : g.edges) {
    BigInt c = big_divexact(scale, BigInt(static_cast<long>(e.weight)));
    BigInt wt = c * BigInt(static_cast<long>(g.vertex_weight[e.terminus]));
    BigInt wo = c * BigInt(static_cast<long>(g.vertex_weight[e.origin]));
    M.at(e.terminus, e.origin) -= wt;
    M.at(e.origin, e.terminus) -= wo;
    M.at(e.terminus, e.terminus) += wt;
    M.at(e.origin, e.origin) += wo;
  }
  return M;
}

inline BigMat scaled_adjacency(const WeightedGraph& g, const BigInt& scale) {
  int n = g.num_vertices();
  BigMat M(n, n);
  for (const auto& e : g.edges) {
    BigInt c = big_divexact(scale, to_big(e.weight));
    M.at(e.terminus, e.origin) += c * to_big(g.vertex_weight[e.terminus]);
    M.at(e.origin, e.terminus) += c * to_big(g.vertex_weight[e.origin]);
  }
  return M;
}

namespace detail {
// det(xI - M/s) = s^{-n} det((sx)I - M): coefficient k picks up s^{k-n}
inline std::vector<BigRat> descale_charpoly(const std::vector<BigInt>& ci, const BigInt& s) {
  int n = static_cast<int>(ci.size()) - 1;
  std::vector<BigRat> c(n + 1);
  for (int k = 0; k <= n; ++k) c[k] = make_rat(ci[k], big_pow(s, n - k));
  return c;
}
}  // namespace detail

// Exact characteristic polynomials, coefficients of x^0..x^n.
inline std::vector<BigRat> laplacian_charpoly(const WeightedGraph& g, bool use_faddeev = false) {
  BigInt s = laplacian_denominator(g);
  BigMat M = scaled_laplacian(g, s);
  return detail::descale_charpoly(use_faddeev ? charpoly_faddeev(M) : charpoly_exact(M), s);
}

inline std::vector<BigRat> adjacency_charpoly(const WeightedGraph& g, bool use_faddeev = false) {
  BigInt s = laplacian_denominator(g);
  BigMat M = scaled_adjacency(g, s);
  return detail::descale_charpoly(use_faddeev ? charpoly_faddeev(M) : charpoly_exact(M), s);
}

// Product of the nonzero Laplacian eigenvalues, (-1)^{n-1} * (x^1 coefficient).
// Throws if the x^1 coefficient vanishes (zero eigenvalue not simple).
inline BigRat laplacian_eigenvalue_product(const WeightedGraph& g) {
  int n = g.num_vertices();
  std::vector<BigRat> c = laplacian_charpoly(g);
  if (c[0] != 0) throw std::runtime_error("internal: charpoly constant term nonzero");
  if (c[1] == 0) throw std::runtime_error("multiplicity of zero eigenvalue exceeds one");
  return ((n - 1) % 2 == 0) ? c[1] : BigRat(-c[1]);
}

inline BigInt sum_of_vertex_coweight_products(const WeightedGraph& g) {
  BigInt all = 1;
  for (long long w : g.vertex_weight) all *= BigInt(static_cast<long>(w));
  BigInt s = 0;
  for (long long w : g.vertex_weight) s += big_divexact(all, BigInt(static_cast<long>(w)));
  return s;
}

inline BigInt product_of_edge_weights(const WeightedGraph& g) {
  BigInt p = 1;
  for (const auto& e : g.edges) p *= BigInt(static_cast<long>(e.weight));
  return p;
}

// Discriminant by the spectral route: rearranging the identity,
// D = prod lambda_i * prod w(e) / sum_v prod_{v' != v} w(v').
inline BigInt discriminant_via_spectrum(const WeightedGraph& g) {
  BigRat rhs = laplacian_eigenvalue_product(g) * BigRat(product_of_edge_weights(g));
  BigRat d = rhs / BigRat(sum_of_vertex_coweight_products(g));
  d.canonicalize();
  if (d.get_den() != 1) throw std::runtime_error("spectral discriminant is not an integer");
  BigInt num = d.get_num();
  if (num < 0) num = -num;
  return num;
}

// ---- matrix-tree identity verification --------------------------------------

struct MatrixTreeCheck {
  bool exact = true;
  bool ok = false;
  BigInt lhs;      // exact mode
  BigRat rhs;      // exact mode
  double lhs_f = 0, rhs_f = 0, rel_diff = 0;  // float mode
};

std::vector<double> float_eigenvalues(const WeightedGraph& g, bool laplacian_op);

inline MatrixTreeCheck verify_matrix_tree_identity(const WeightedGraph& g, bool exact_mode,
                                                   double float_tol = 1e-6) {
  if (!g.connected()) throw std::runtime_error("disconnected graph");
  MatrixTreeCheck out;
  out.exact = exact_mode;
  BigInt disc = discriminant(g, /*with_divisors=*/false, /*allow_trivial=*/true).order;
  BigInt weight_sum = sum_of_vertex_coweight_products(g);
  BigInt edge_prod = product_of_edge_weights(g);
  if (exact_mode) {
    out.lhs = disc * weight_sum;
    out.rhs = laplacian_eigenvalue_product(g) * BigRat(edge_prod);
    out.rhs.canonicalize();
    out.ok = (BigRat(out.lhs) == out.rhs);
  } else {
    std::vector<double> eig = float_eigenvalues(g, /*laplacian_op=*/true);
    double prod = 1.0;
    for (size_t i = 1; i < eig.size(); ++i) prod *= eig[i];
    out.lhs_f = big_ln(disc * weight_sum);
    out.rhs_f = std::log(prod) + big_ln(edge_prod);
    // compare in linear scale via log difference
    out.rel_diff = std::abs(std::expm1(out.rhs_f - out.lhs_f));
    out.ok = out.rel_diff <= float_tol;
  }
  return out;
}

// ---- subdivision -------------------------------------------------------------

// Replace each edge of weight w by a path of w unit edges; all vertex weights
// become 1. The discriminant is invariant under this operation.
inline WeightedGraph subdivide(const WeightedGraph& g) {
  WeightedGraph out;
  for (int v = 0; v < g.num_vertices(); ++v) out.add_vertex(1);
  for (const auto& e : g.edges) {
    int prev = e.origin;
    for (long long k = 1; k < e.weight; ++k) {
      int mid = out.add_vertex(1);
      out.add_edge(prev, mid, 1);
      prev = mid;
    }
    out.add_edge(prev, e.terminus, 1);
  }
  return out;
}

// ---- float spectra (symmetrized) ---------------------------------------------

// Symmetrization W^{-1/2} M W^{1/2} of the adjacency or Laplacian operator;
// symmetric because M[v][u]/w(v) is symmetric in (u, v).
inline std::vector<double> symmetrized_operator(const WeightedGraph& g, bool laplacian_op) {
  int n = g.num_vertices();
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  std::vector<double> sqrtw(n);
  for (int v = 0; v < n; ++v) sqrtw[v] = std::sqrt(static_cast<double>(g.vertex_weight[v]));
  auto add = [&](int i, int j, double x) { m[static_cast<size_t>(i) * n + j] += x; };
  for (const auto& e : g.edges) {
    double coupling = sqrtw[e.origin] * sqrtw[e.terminus] / static_cast<double>(e.weight);
    double sign = laplacian_op ? -1.0 : 1.0;
    add(e.terminus, e.origin, sign * coupling);
    add(e.origin, e.terminus, sign * coupling);
    if (laplacian_op) {
      add(e.terminus, e.terminus, static_cast<double>(g.vertex_weight[e.terminus]) / e.weight);
      add(e.origin, e.origin, static_cast<double>(g.vertex_weight[e.origin]) / e.weight);
    }
  }
  return m;
}

inline std::vector<double> float_eigenvalues(const WeightedGraph& g, bool laplacian_op) {
  int n = g.num_vertices();
  return jacobi_eigensolve(symmetrized_operator(g, laplacian_op), n, /*want_vectors=*/false)
      .values;
}

}  // namespace drinfeld
