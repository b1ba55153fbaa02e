#pragma once

// Adaptive 16-point Gauss-Legendre quadrature, the equidistribution measure
// mu_q, and the spectral log-average constant
//
//   C_q = (q+1)/(2 pi) int_{(sqrt q - 1)^2}^{(sqrt q + 1)^2}
//           sqrt(4q - ((q+1)-x)^2) / ((q+1)^2 - ((q+1)-x)^2) * ln(x) dx.
//
// The substitution x = q+1 - 2 sqrt(q) cos(theta) removes the square-root
// endpoint singularity; the integrand becomes analytic on [0, pi]:
//
//   C_q = (2 q (q+1) / pi) int_0^pi sin^2(theta) ln(q+1-2 sqrt(q) cos(theta))
//                                   / ((q+1)^2 - 4 q cos^2(theta)) d theta.
//
// mu_q(x) = (q+1)/(2 pi) sqrt(4q-x^2)/((q+1)^2-x^2) on [-2 sqrt q, 2 sqrt q];
// its CDF uses x = 2 sqrt(q) sin(t), again analytic in t.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace drinfeld {

namespace detail {

// standard 16-point Gauss-Legendre nodes and weights on [-1, 1]
inline constexpr double kGL16Node[8] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542};
inline constexpr double kGL16Weight[8] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

template <class F>
double gl16(const F& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double s = 0;
  for (int i = 0; i < 8; ++i) {
    double dx = half * kGL16Node[i];
    s += kGL16Weight[i] * (f(mid - dx) + f(mid + dx));
  }
  return s * half;
}

template <class F>
double adaptive_gl(const F& f, double a, double b, double tol, int depth) {
  if (depth > 48) throw std::runtime_error("tolerance not met: quadrature depth cap exceeded");
  double whole = gl16(f, a, b);
  double mid = 0.5 * (a + b);
  double split = gl16(f, a, mid) + gl16(f, mid, b);
  if (std::abs(whole - split) <= tol) return split;
  return adaptive_gl(f, a, mid, tol / 2, depth + 1) + adaptive_gl(f, mid, b, tol / 2, depth + 1);
}

}  // namespace detail

template <class F>
double integrate(const F& f, double a, double b, double abs_tol) {
  if (a == b) return 0;
  return detail::adaptive_gl(f, a, b, abs_tol / 2, 0);
}

// C_q to absolute accuracy abs_tol.
inline double cq(int q, double abs_tol = 1e-8) {
  if (q < 2) throw std::runtime_error("unsupported q: " + std::to_string(q));
  if (abs_tol < 1e-10) throw std::runtime_error("abs_tol below supported accuracy");
  const double pi = 3.14159265358979323846264338327950288;
  double sq = std::sqrt(static_cast<double>(q));
  double qp1 = q + 1;
  auto integrand = [&](double theta) {
    double c = std::cos(theta), s = std::sin(theta);
    return s * s * std::log(qp1 - 2 * sq * c) / (qp1 * qp1 - 4 * q * c * c);
  };
  double scale = 2.0 * q * qp1 / pi;
  return scale * integrate(integrand, 0.0, pi, abs_tol / scale);
}

// growth constant of the component-group order: c(q) = 2 C_q / ((q-1)^2 (q+1))
inline double cq_rate(int q, double abs_tol = 1e-8) {
  return 2.0 * cq(q, abs_tol) / (static_cast<double>(q - 1) * (q - 1) * (q + 1));
}

struct CqResidualRow {
  int q;
  double cq_value;
  double residual;       // C_q - ln(q + 1/2)
  double scaled;         // q^2 residual / ln q
};

// Residuals against the asymptotic C_q = ln(q + 1/2) + O(q^-2 ln q), with the
// minimal constant K = max |residual| q^2 / ln q over the list.
struct CqResidualTable {
  std::vector<CqResidualRow> rows;
  double fitted_k = 0;
};

inline CqResidualTable cq_asymptotic_check(const std::vector<int>& q_list,
                                           double abs_tol = 1e-8) {
  CqResidualTable t;
  for (int q : q_list) {
    CqResidualRow r;
    r.q = q;
    r.cq_value = cq(q, abs_tol);
    r.residual = r.cq_value - std::log(q + 0.5);
    r.scaled = q * static_cast<double>(q) * std::abs(r.residual) / std::log(static_cast<double>(q));
    t.fitted_k = std::max(t.fitted_k, r.scaled);
    t.rows.push_back(r);
  }
  return t;
}

// ---- the measure mu_q ---------------------------------------------------------

struct MuQMeasure {
  int q;
  double sqrt_q;

  explicit MuQMeasure(int qq) : q(qq), sqrt_q(std::sqrt(static_cast<double>(qq))) {}

  double support_min() const { return -2 * sqrt_q; }
  double support_max() const { return 2 * sqrt_q; }

  double density(double x) const {
    double r = 4 * q - x * x;
    if (r <= 0) return 0;
    const double pi = 3.14159265358979323846264338327950288;
    return (q + 1) / (2 * pi) * std::sqrt(r) / ((q + 1.0) * (q + 1.0) - x * x);
  }

  // CDF via x = 2 sqrt(q) sin(t): integrand (q+1)/(2 pi) 4q cos^2 t /
  // ((q+1)^2 - 4q sin^2 t), analytic in t
  double cdf(double x, double abs_tol = 1e-8) const {
    if (x <= support_min()) return 0;
    bool clip = x >= support_max();
    double t1 = clip ? std::asin(1.0) : std::asin(x / (2 * sqrt_q));
    const double pi = 3.14159265358979323846264338327950288;
    auto integrand = [&](double t) {
      double c = std::cos(t), s = std::sin(t);
      return (q + 1) / (2 * pi) * 4 * q * c * c / ((q + 1.0) * (q + 1.0) - 4 * q * s * s);
    };
    return integrate(integrand, -pi / 2, t1, abs_tol);
  }

  double total_mass(double abs_tol = 1e-8) const { return cdf(support_max(), abs_tol); }
};

}  // namespace drinfeld
