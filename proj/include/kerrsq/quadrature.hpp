#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "kerrsq/errors.hpp"

namespace kerrsq {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 5000;
};

template <class T>
struct IntegralResult {
  T value{};
  double error_bound = 0.0;
  int subdivisions = 0;
  bool converged = false;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule (positive abscissae).
inline constexpr double kGk15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};

inline constexpr double kGk15KronrodW[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};

inline constexpr double kGk15GaussW[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

inline double value_norm(double x) { return std::abs(x); }
inline double value_norm(const std::complex<double>& x) { return std::abs(x); }

template <class T, class F>
void gk15_panel(const F& f, double a, double b, T& integral, double& error) {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);

  T fv[15];
  fv[14] = f(center);
  for (int j = 0; j < 7; ++j) {
    fv[j] = f(center - half * kGk15Nodes[j]);
    fv[7 + j] = f(center + half * kGk15Nodes[j]);
  }

  T resg = kGk15GaussW[3] * fv[14];
  for (int j = 0; j < 3; ++j) {
    resg += kGk15GaussW[j] * (fv[2 * j + 1] + fv[7 + 2 * j + 1]);
  }
  T resk = kGk15KronrodW[7] * fv[14];
  double resabs = kGk15KronrodW[7] * value_norm(fv[14]);
  for (int j = 0; j < 7; ++j) {
    resk += kGk15KronrodW[j] * (fv[j] + fv[7 + j]);
    resabs += kGk15KronrodW[j] * (value_norm(fv[j]) + value_norm(fv[7 + j]));
  }

  const T reskh = resk * 0.5;
  double resasc = kGk15KronrodW[7] * value_norm(fv[14] - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kGk15KronrodW[j] * (value_norm(fv[j] - reskh) + value_norm(fv[7 + j] - reskh));
  }

  integral = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = value_norm((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  error = std::max(err, eps);
}

template <class T>
struct Panel {
  double error;
  double a, b;
  T integral;
  bool operator<(const Panel& other) const { return error < other.error; }
};

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b].
/// Splits the interval with the largest error estimate until the summed
/// bound drops below max(abs_tol, rel_tol * |integral|). Throws
/// QuadratureError if the subdivision budget runs out first.
template <class F>
auto integrate(const F& f, double a, double b, const QuadratureOptions& opts = {})
    -> IntegralResult<decltype(f(a))> {
  using T = decltype(f(a));
  IntegralResult<T> result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::priority_queue<detail::Panel<T>> panels;
  T total{};
  double total_err = 0.0;

  {
    detail::Panel<T> p{0.0, a, b, T{}};
    detail::gk15_panel(f, a, b, p.integral, p.error);
    total = p.integral;
    total_err = p.error;
    panels.push(p);
  }

  int splits = 0;
  while (total_err > std::max(opts.abs_tol, opts.rel_tol * detail::value_norm(total))) {
    if (splits >= opts.max_subdivisions || panels.empty()) {
      result.value = total;
      result.error_bound = total_err;
      result.subdivisions = splits;
      result.converged = false;
      throw QuadratureError("adaptive quadrature did not converge",
                            detail::value_norm(total), total_err);
    }
    const detail::Panel<T> worst = panels.top();
    panels.pop();
    total -= worst.integral;
    total_err -= worst.error;

    const double mid = 0.5 * (worst.a + worst.b);
    for (const auto& [lo, hi] : {std::pair{worst.a, mid}, std::pair{mid, worst.b}}) {
      detail::Panel<T> p{0.0, lo, hi, T{}};
      detail::gk15_panel(f, lo, hi, p.integral, p.error);
      total += p.integral;
      total_err += p.error;
      panels.push(p);
    }
    ++splits;
  }

  result.value = total;
  result.error_bound = total_err;
  result.subdivisions = splits;
  result.converged = true;
  return result;
}

/// Nested adaptive quadrature over the rectangle [ax,bx] x [ay,by].
/// The inner (x) tolerance should be tighter than the outer one; inner
/// errors enter the outer integrand as smooth perturbations.
template <class F>
auto integrate_2d(const F& f, double ax, double bx, double ay, double by,
                  const QuadratureOptions& outer_opts = {},
                  const QuadratureOptions& inner_opts = {})
    -> IntegralResult<decltype(f(ax, ay))> {
  auto outer_integrand = [&](double y) {
    return integrate([&](double x) { return f(x, y); }, ax, bx, inner_opts).value;
  };
  return integrate(outer_integrand, ay, by, outer_opts);
}

/// Fixed-order Gauss-Legendre nodes/weights on [-1, 1], computed by Newton
/// iteration on the Legendre polynomial. Deterministic; used where a smooth
/// integrand over a fixed small box is integrated many times.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendreRule(int n) : nodes(n), weights(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double p_deriv = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        p_deriv = n * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / p_deriv;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      nodes[i] = -x;
      nodes[n - 1 - i] = x;
      weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * p_deriv * p_deriv);
    }
  }
};

/// Gauss-Legendre integration of f over [a, b] with an n-point rule.
template <class F>
double gauss_legendre(const F& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double center = 0.5 * (a + b);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    acc += rule.weights[i] * f(center + half * rule.nodes[i]);
  }
  return acc * half;
}

}  // namespace kerrsq
