#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "fracext/types.hpp"

namespace fracext {

enum class Scheme {
  gauss_laguerre_generalized,
  /// Double-exponential family: tanh-sinh on finite intervals, exp-sinh on
  /// the half line, with step halving until the tolerance is met.
  tanh_sinh_adaptive,
};

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct QuadratureSpec {
  Scheme scheme = Scheme::tanh_sinh_adaptive;
  /// Gauss-Laguerre: node count (doubled up to twice on non-convergence).
  /// Double-exponential: points in the first refinement level.
  int nodes = 128;
  /// Laguerre weight exponent; callers that know the integrand's weight
  /// override it.
  double alpha = 0.0;
  double tol = 1e-13;

  void validate() const;

  static QuadratureSpec laguerre(int nodes = 128, double tol = 1e-12) {
    return {Scheme::gauss_laguerre_generalized, nodes, 0.0, tol};
  }
  static QuadratureSpec double_exponential(double tol = 1e-13, int nodes = 128) {
    return {Scheme::tanh_sinh_adaptive, nodes, 0.0, tol};
  }
};

/// Nodes and weights for \int_0^\infty x^alpha e^{-x} f(x) dx.
struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Generalized Gauss-Laguerre rule: Golub-Welsch nodes polished by Newton
/// steps on the three-term recurrence, weights from the closed form.
LaguerreRule gauss_laguerre_rule(int n, double alpha);

template <class T>
struct QuadResult {
  T value;
  double error = 0.0;  // last refinement difference
  int evaluations = 0;
  bool converged = false;
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }
inline double magnitude(const Vector& x) { return x.norm(); }

namespace detail {

template <class T>
T zero_like(const T& sample) {
  if constexpr (std::is_same_v<T, Vector>) {
    return Vector::Zero(sample.size());
  } else {
    return T{0};
  }
}

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Generic trapezoid-in-tau driver shared by the double-exponential rules.
// `node(tau, x, w)` fills the abscissa and the Jacobian weight; points with
// w == 0 are skipped.
template <class F, class NodeFn>
auto de_integrate(F&& f, NodeFn&& node, double tau_max, const QuadratureSpec& q)
    -> QuadResult<decltype(f(1.0))> {
  using T = decltype(f(1.0));
  q.validate();
  constexpr int kMaxLevels = 7;
  double h = 2.0 * tau_max / q.nodes;
  int evals = 0;

  double abs_sum = 0.0;  // sum of |f| w, used as the round-off floor
  auto eval_at = [&](double tau, T& acc, bool& have) {
    double x = 0.0;
    double w = 0.0;
    node(tau, x, w);
    if (w == 0.0 || !std::isfinite(w)) return;
    T fx = f(x);
    ++evals;
    abs_sum += magnitude(fx) * w;
    if (!have) {
      acc = zero_like(fx);
      have = true;
    }
    acc += fx * w;
  };

  // Level 0: all points k*h in [-tau_max, tau_max].
  T sum{};
  bool have = false;
  const int kmax = static_cast<int>(std::floor(tau_max / h));
  for (int k = -kmax; k <= kmax; ++k) eval_at(k * h, sum, have);
  T estimate = sum * h;

  QuadResult<T> result{estimate, 0.0, evals, false};
  for (int level = 1; level <= kMaxLevels; ++level) {
    h *= 0.5;
    T odd{};
    bool have_odd = false;
    const int m = static_cast<int>(std::floor(tau_max / h));
    for (int k = -m; k <= m; ++k) {
      if ((k & 1) == 0) continue;
      eval_at(k * h, odd, have_odd);
    }
    if (have_odd) sum += odd;
    T next = sum * h;
    const double diff = magnitude(T(next - estimate));
    estimate = next;
    result = {estimate, diff, evals, false};
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum * h;
    if (diff <= q.tol * magnitude(estimate) || diff <= floor) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace detail

/// \int_a^b f(x) dx by tanh-sinh. Abscissae near `a` are formed as a + d with
/// d computed directly, so endpoint singularities should be placed at `a`.
template <class F>
auto tanh_sinh(F&& f, double a, double b, const QuadratureSpec& q)
    -> QuadResult<decltype(f(1.0))> {
  require(b > a, "tanh-sinh interval must satisfy b > a");
  const double len = b - a;
  auto node = [a, b, len](double tau, double& x, double& w) {
    const double u = detail::kHalfPi * std::sinh(tau);
    // Distance to the nearer endpoint: len / (1 + e^{2|u|}).
    const double e = std::exp(-2.0 * std::abs(u));
    const double d = len * e / (1.0 + e);
    if (d <= 0.0) {
      w = 0.0;
      return;
    }
    x = (u < 0.0) ? a + d : b - d;
    // sech^2(u) = 4 e^{-2|u|} / (1 + e^{-2|u|})^2
    w = len * 0.5 * detail::kHalfPi * std::cosh(tau) * 4.0 * e / ((1.0 + e) * (1.0 + e));
  };
  return detail::de_integrate(std::forward<F>(f), node, 6.0, q);
}

/// \int_0^\infty f(r) dr by the exp-sinh map r = exp(pi/2 sinh tau).
template <class F>
auto exp_sinh(F&& f, const QuadratureSpec& q) -> QuadResult<decltype(f(1.0))> {
  auto node = [](double tau, double& x, double& w) {
    const double v = detail::kHalfPi * std::sinh(tau);
    x = std::exp(v);
    w = x * detail::kHalfPi * std::cosh(tau);
    if (x == 0.0 || !std::isfinite(x)) w = 0.0;
  };
  return detail::de_integrate(std::forward<F>(f), node, 6.5, q);
}

/// \int_0^\infty x^alpha e^{-x} f(x) dx with the generalized Gauss-Laguerre
/// rule; the node count is doubled (twice at most) until successive values
/// agree to q.tol.
template <class F>
auto gauss_laguerre(F&& f, double alpha, const QuadratureSpec& q)
    -> QuadResult<decltype(f(1.0))> {
  using T = decltype(f(1.0));
  q.validate();
  auto apply_rule = [&](int n, int& evals) {
    const LaguerreRule rule = gauss_laguerre_rule(n, alpha);
    T acc = detail::zero_like(f(rule.nodes[0]));
    for (int i = 0; i < n; ++i) {
      if (rule.weights[i] == 0.0) continue;
      acc += f(rule.nodes[i]) * rule.weights[i];
      ++evals;
    }
    return acc;
  };
  int evals = 0;
  int n = q.nodes;
  T prev = apply_rule(n, evals);
  QuadResult<T> result{prev, 0.0, evals, false};
  for (int doubling = 0; doubling < 2; ++doubling) {
    n *= 2;
    T next = apply_rule(n, evals);
    const double diff = magnitude(T(next - prev));
    result = {next, diff, evals, false};
    if (diff <= q.tol * magnitude(next) || diff == 0.0) {
      result.converged = true;
      break;
    }
    prev = next;
  }
  return result;
}

/// Throws NonConvergence when the result did not meet its tolerance.
template <class T>
const T& checked(const QuadResult<T>& r, const char* what) {
  if (!r.converged) throw NonConvergence(std::string(what) + ": quadrature did not converge", r.error);
  return r.value;
}

}  // namespace fracext
