#include "fracext/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fracext {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::gauss_laguerre_generalized:
      return "gauss_laguerre_generalized";
    case Scheme::tanh_sinh_adaptive:
      return "tanh_sinh_adaptive";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "gauss_laguerre_generalized" || name == "gauss_laguerre") {
    return Scheme::gauss_laguerre_generalized;
  }
  if (name == "tanh_sinh_adaptive" || name == "tanh_sinh") return Scheme::tanh_sinh_adaptive;
  throw ValidationError("unknown quadrature scheme '" + name + "'");
}

void QuadratureSpec::validate() const {
  require(nodes >= 8, "quadrature needs at least 8 nodes");
  require(alpha > -1.0, "Laguerre weight exponent must exceed -1");
  require(tol > 0.0, "quadrature tolerance must be positive");
}

namespace {

// L_n^{(alpha)}(x) and L_{n-1}^{(alpha)}(x) by the three-term recurrence.
void laguerre_pair(int n, long double alpha, long double x, long double& ln, long double& lnm1) {
  long double p0 = 1.0L;
  long double p1 = 1.0L + alpha - x;
  if (n == 0) {
    ln = p0;
    lnm1 = 0.0L;
    return;
  }
  for (int k = 1; k < n; ++k) {
    const long double p2 = ((2.0L * k + 1.0L + alpha - x) * p1 - (k + alpha) * p0) / (k + 1.0L);
    p0 = p1;
    p1 = p2;
  }
  ln = p1;
  lnm1 = p0;
}

}  // namespace

LaguerreRule gauss_laguerre_rule(int n, double alpha) {
  require(n >= 1, "Gauss-Laguerre rule needs n >= 1");
  require(alpha > -1.0, "Laguerre weight exponent must exceed -1");

  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + alpha + 1.0;
    if (k > 0) {
      const double b = std::sqrt(k * (k + alpha));
      jacobi(k, k - 1) = b;
      jacobi(k - 1, k) = b;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi, Eigen::EigenvaluesOnly);
  require(eig.info() == Eigen::Success, "Golub-Welsch eigensolve failed");

  LaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const long double a = alpha;
  // log of Gamma(n + alpha + 1) / n!
  const long double log_ratio = std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    long double x = eig.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      long double ln = 0.0L;
      long double lnm1 = 0.0L;
      laguerre_pair(n, a, x, ln, lnm1);
      // x L_n' = n L_n - (n + alpha) L_{n-1}
      const long double deriv = (n * ln - (n + a) * lnm1) / x;
      if (deriv == 0.0L) break;
      const long double step = ln / deriv;
      x -= step;
      if (std::fabs(step) <= 1e-19L * std::fabs(x)) break;
    }
    long double ln1 = 0.0L;
    long double ln = 0.0L;
    laguerre_pair(n + 1, a, x, ln1, ln);
    const long double denom = (n + 1.0L) * (n + 1.0L) * ln1 * ln1;
    rule.nodes[i] = static_cast<double>(x);
    rule.weights[i] = static_cast<double>(std::exp(log_ratio) * x / denom);
  }
  return rule;
}

}  // namespace fracext
