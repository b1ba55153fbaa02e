#pragma once

// Cyclic Jacobi eigensolver for real symmetric matrices. Deterministic,
// accurate to near machine precision for the few-hundred-row matrices this
// project produces. Convergence: off-diagonal Frobenius norm below
// 1e-13 * ||S||_F.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace drinfeld {

struct SymEig {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major n x n; column j = eigenvector of values[j]
  int n = 0;
  double vector_at(int row, int col) const { return vectors[static_cast<size_t>(row) * n + col]; }
};

inline SymEig jacobi_eigensolve(std::vector<double> s, int n, bool want_vectors = true) {
  if (static_cast<size_t>(n) * n != s.size()) throw std::runtime_error("matrix size mismatch");
  auto at = [&](int i, int j) -> double& { return s[static_cast<size_t>(i) * n + j]; };

  std::vector<double> v;
  if (want_vectors) {
    v.assign(static_cast<size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;
  }

  double fro = 0;
  for (double x : s) fro += x * x;
  fro = std::sqrt(fro);
  const double tol = 1e-13 * std::max(fro, 1e-300);

  auto offdiag = [&]() {
    double o = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) o += 2 * at(i, j) * at(i, j);
    return std::sqrt(o);
  };

  const int max_sweeps = 100;
  int sweep = 0;
  while (offdiag() > tol) {
    if (++sweep > max_sweeps) throw std::runtime_error("eigensolver convergence failure");
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) {
        double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double theta = (at(q, q) - at(p, p)) / (2 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * c;
        double tau = sn / (1.0 + c);

        double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = 0;
        at(q, p) = 0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          double aip = at(i, p), aiq = at(i, q);
          at(i, p) = aip - sn * (aiq + tau * aip);
          at(p, i) = at(i, p);
          at(i, q) = aiq + sn * (aip - tau * aiq);
          at(q, i) = at(i, q);
        }
        if (want_vectors)
          for (int i = 0; i < n; ++i) {
            double vip = v[static_cast<size_t>(i) * n + p];
            double viq = v[static_cast<size_t>(i) * n + q];
            v[static_cast<size_t>(i) * n + p] = vip - sn * (viq + tau * vip);
            v[static_cast<size_t>(i) * n + q] = viq + sn * (vip - tau * viq);
          }
      }
  }

  SymEig out;
  out.n = n;
  out.values.resize(n);
  for (int i = 0; i < n; ++i) out.values[i] = at(i, i);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return out.values[a] < out.values[b]; });
  std::vector<double> sorted(n);
  for (int i = 0; i < n; ++i) sorted[i] = out.values[order[i]];
  out.values = std::move(sorted);
  if (want_vectors) {
    out.vectors.assign(static_cast<size_t>(n) * n, 0.0);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        out.vectors[static_cast<size_t>(i) * n + j] = v[static_cast<size_t>(i) * n + order[j]];
  }
  return out;
}

}  // namespace drinfeld
