#pragma once

// Floating-point spectral analysis of cores: eigenvalues of the weighted
// adjacency and Laplacian operators, the interlacing/Ramanujan bound checks,
// cusp-form spectrum extraction, and equidistribution statistics.
//
// Cusp-form criterion. A core eigenfunction f of the adjacency operator
// extends by zero to an eigenfunction of the full diagram iff f vanishes on
// every boundary (cusp attachment) vertex: the only diagram vertices with a
// neighbour outside the core are the attachments v_0 (so eigenvector
// equations at interior core vertices are untouched), and at the first cusp
// vertex v_1 the equation reads q f(v_0) = lambda * 0, forcing f(v_0) = 0;
// deeper cusp vertices see only zeros. Conversely an L^2 eigenfunction of a
// Ramanujan diagram vanishes along every cusp including the attachment, since
// with |lambda| <= 2 sqrt(q) the recurrence lambda f(n) = q f(n-1) + f(n+1)
// has no nonzero solution with f(n) = o(q^{n/2}). So the discrete spectrum is
// exactly the multiset of core eigenvalues whose eigenspace vanishes on the
// boundary, with multiplicity the dimension of the vanishing subspace.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "drinfeld/diagram.hpp"
#include "drinfeld/discriminant.hpp"
#include "drinfeld/jacobi.hpp"
#include "drinfeld/quadrature.hpp"

namespace drinfeld {

struct BoundVerdict {
  std::string name;
  double value;
  double limit;
  bool is_lower_bound;
  bool ok;
};

struct SpectralReport {
  int q = 0;
  int n = 0;  // core vertices
  int m = 0;  // cusp eigenvalues with multiplicity
  std::vector<double> laplacian_eigs;   // gamma, ascending
  std::vector<double> adjacency_eigs;   // lambda, ascending
  std::vector<double> shifted_eigs;     // alpha_i = (q+1) - lambda, ascending
  std::vector<double> cusp_eigs;        // nu, ascending
  std::vector<BoundVerdict> verdicts;
  double s_p = 0;      // sum_{i >= 2} ln(gamma_i)
  double s_cusp = 0;   // sum_j ln((q+1) - nu_j)
  int clustering_warnings = 0;
  bool bounds_ok = false;
};

// Eigenvalues of the weighted adjacency or Laplacian operator, ascending.
inline std::vector<double> eigenvalues(const WeightedGraph& g, bool laplacian_op) {
  if (!g.connected()) throw std::runtime_error("disconnected graph");
  return float_eigenvalues(g, laplacian_op);
}

// Discrete (cusp-form) spectrum of a core: for each adjacency eigenvalue
// cluster, the dimension of the boundary-vanishing subspace of eigenvectors.
inline std::vector<double> cusp_spectrum(const WeightedGraph& core,
                                         const std::vector<int>& boundary,
                                         int* clustering_warnings = nullptr) {
  int n = core.num_vertices();
  SymEig eig = jacobi_eigensolve(symmetrized_operator(core, /*laplacian_op=*/false), n, true);

  auto cluster_tol = [](double lam) { return 1e-8 * std::max(1.0, std::abs(lam)); };
  std::vector<double> out;
  int warnings = 0;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n &&
           eig.values[end] - eig.values[end - 1] <= cluster_tol(eig.values[end])) ++end;
    if (end < n && eig.values[end] - eig.values[end - 1] < 1e-9) ++warnings;
    int k = end - start;

    // rank of the boundary-value matrix (rows = boundary vertices, cols =
    // cluster eigenvectors) by modified Gram-Schmidt, pivot threshold 1e-7
    std::vector<std::vector<double>> rows;
    for (int b : boundary) {
      std::vector<double> row(k);
      for (int j = 0; j < k; ++j) row[j] = eig.vector_at(b, start + j);
      rows.push_back(std::move(row));
    }
    int rank = 0;
    std::vector<std::vector<double>> basis;
    for (auto& row : rows) {
      double orig = 0;
      for (double x : row) orig += x * x;
      orig = std::sqrt(orig);
      for (const auto& u : basis) {
        double dot = 0;
        for (int j = 0; j < k; ++j) dot += row[j] * u[j];
        for (int j = 0; j < k; ++j) row[j] -= dot * u[j];
      }
      double norm = 0;
      for (double x : row) norm += x * x;
      norm = std::sqrt(norm);
      if (norm > 1e-7 * std::max(1.0, orig)) {
        for (double& x : row) x /= norm;
        basis.push_back(row);
        ++rank;
      }
    }
    int mult = k - rank;
    if (mult > 0) {
      double center = 0;
      for (int j = start; j < end; ++j) center += eig.values[j];
      center /= k;
      for (int c = 0; c < mult; ++c) out.push_back(center);
    }
    start = end;
  }
  if (clustering_warnings) *clustering_warnings = warnings;
  return out;
}

// Weyl inequalities for eigenvalues of Hermitian A, B, C = A + B:
// gamma_i >= alpha_j + beta_{i-j+1} (i >= j), gamma_i <= alpha_j + beta_{i-j+n} (i <= j).
inline bool check_weyl_inequalities(const std::vector<double>& alpha,
                                    const std::vector<double>& beta,
                                    const std::vector<double>& gamma, double tol) {
  int n = static_cast<int>(alpha.size());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i >= j && gamma[i - 1] < alpha[j - 1] + beta[i - j] - tol) return false;
      if (i <= j && gamma[i - 1] > alpha[j - 1] + beta[i - j + n - 1] + tol) return false;
    }
  return true;
}

struct WeylDecomposition {
  bool interlacing_ok = false;  // alpha_i - max_deficiency <= gamma_i <= alpha_i
  double epsilon_sum = 0;       // sum (alpha_i - gamma_i) = total degree deficiency
  bool epsilon_ok = false;
  bool ok() const { return interlacing_ok && epsilon_ok; }
};

// Delta = ((q+1)I - delta') + (D - (q+1)I). The second summand has
// eigenvalues -(q+1 - deg v); for the core of a prime modulus these are
// {-1, -1, 0, ..., 0}, giving alpha_i - 1 <= gamma_i <= alpha_i and
// sum(alpha_i - gamma_i) = 2.
inline WeylDecomposition weyl_decomposition_check(const std::vector<double>& alpha,
                                                  const std::vector<double>& gamma,
                                                  double tol = 1e-8,
                                                  double max_deficiency = 1.0,
                                                  double total_deficiency = 2.0) {
  WeylDecomposition out;
  int n = static_cast<int>(alpha.size());
  out.interlacing_ok = true;
  for (int i = 0; i < n; ++i)
    if (gamma[i] < alpha[i] - max_deficiency - tol || gamma[i] > alpha[i] + tol)
      out.interlacing_ok = false;
  out.epsilon_sum = 0;
  for (int i = 0; i < n; ++i) out.epsilon_sum += alpha[i] - gamma[i];
  out.epsilon_ok = std::abs(out.epsilon_sum - total_deficiency) <= 1e-6;
  return out;
}

// The seven spectral bounds checked on every core. d1 is the smallest
// weighted vertex degree; for the core of a prime modulus d1 = q.
inline std::vector<BoundVerdict> check_bounds(const std::vector<double>& lambda,
                                              const std::vector<double>& gamma, int q,
                                              double tol = 1e-8, double d1 = -1.0) {
  int n = static_cast<int>(lambda.size());
  if (d1 < 0) d1 = q;
  double sq2 = 2 * std::sqrt(static_cast<double>(q));
  std::vector<BoundVerdict> v;
  auto lower = [&](const char* name, double value, double limit) {
    v.push_back({name, value, limit, true, value >= limit - tol});
  };
  auto upper = [&](const char* name, double value, double limit) {
    v.push_back({name, value, limit, false, value <= limit + tol});
  };
  lower("lambda_1 >= -(q+1)", lambda[0], -(q + 1.0));
  upper("lambda_n <= q+1", lambda[n - 1], q + 1.0);
  lower("lambda_2 >= -2 sqrt(q)", lambda[1], -sq2);
  upper("lambda_{n-1} <= 2 sqrt(q)", lambda[n - 2], sq2);
  lower("gamma_2 >= d_1 - 2 sqrt(q)", gamma[1], d1 - sq2);
  upper("gamma_{n-1} <= q+1+2 sqrt(q)", gamma[n - 2], q + 1 + sq2);
  upper("gamma_n <= 2(q+1)", gamma[n - 1], 2 * (q + 1.0));
  return v;
}

inline SpectralReport spectral_report(const CoreGraph& core, int q) {
  SpectralReport r;
  r.q = q;
  r.n = core.graph.num_vertices();
  r.laplacian_eigs = eigenvalues(core.graph, true);
  r.adjacency_eigs = eigenvalues(core.graph, false);
  r.shifted_eigs.resize(r.n);
  for (int i = 0; i < r.n; ++i) r.shifted_eigs[i] = (q + 1.0) - r.adjacency_eigs[r.n - 1 - i];
  r.cusp_eigs = cusp_spectrum(core.graph, core.boundary, &r.clustering_warnings);
  r.m = static_cast<int>(r.cusp_eigs.size());
  double d1 = q + 1.0;
  for (int v = 0; v < r.n; ++v) d1 = std::min(d1, to_double(core.graph.degree(v)));
  r.verdicts = check_bounds(r.adjacency_eigs, r.laplacian_eigs, q, 1e-8, d1);
  r.bounds_ok = true;
  for (const auto& b : r.verdicts) r.bounds_ok = r.bounds_ok && b.ok;
  r.s_p = 0;
  for (int i = 1; i < r.n; ++i) r.s_p += std::log(r.laplacian_eigs[i]);
  r.s_cusp = 0;
  for (double nu : r.cusp_eigs) r.s_cusp += std::log((q + 1.0) - nu);
  return r;
}

// ---- equidistribution ----------------------------------------------------------

struct HistogramBin {
  double left, right;
  int count;
  double mu_mass;
};

struct EquidistributionReport {
  double ks_distance = 0;
  std::vector<HistogramBin> histogram;
};

inline EquidistributionReport equidistribution_report(std::vector<double> cusp_eigs, int q,
                                                      int bins = 40, double quad_tol = 1e-8) {
  if (cusp_eigs.empty()) throw std::runtime_error("empty cusp spectrum");
  std::sort(cusp_eigs.begin(), cusp_eigs.end());
  MuQMeasure mu(q);
  int m = static_cast<int>(cusp_eigs.size());

  EquidistributionReport rep;
  double d = 0;
  for (int i = 0; i < m; ++i) {
    double F = mu.cdf(cusp_eigs[i], quad_tol);
    d = std::max(d, std::abs(F - static_cast<double>(i + 1) / m));
    d = std::max(d, std::abs(F - static_cast<double>(i) / m));
  }
  rep.ks_distance = d;

  double lo = mu.support_min(), hi = mu.support_max();
  double width = (hi - lo) / bins;
  double prev_cdf = 0;
  for (int b = 0; b < bins; ++b) {
    HistogramBin hb;
    hb.left = lo + b * width;
    hb.right = (b + 1 == bins) ? hi : lo + (b + 1) * width;
    double cdf_right = (b + 1 == bins) ? mu.total_mass(quad_tol) : mu.cdf(hb.right, quad_tol);
    hb.mu_mass = cdf_right - prev_cdf;
    prev_cdf = cdf_right;
    hb.count = 0;
    for (double x : cusp_eigs)
      if (x >= hb.left && (x < hb.right || (b + 1 == bins && x <= hb.right))) ++hb.count;
    rep.histogram.push_back(hb);
  }
  return rep;
}

}  // namespace drinfeld
