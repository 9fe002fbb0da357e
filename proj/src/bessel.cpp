#include "fracext/bessel.hpp"

#include <cmath>
#include <limits>

namespace fracext {

void BesselParams::validate() const {
  require(a < 1.0, "Bessel coefficient a must be < 1");
  require(trunc_tol > 0.0, "series tolerance must be positive");
  require(max_terms >= 1, "series needs at least one term");
}

namespace {

// Root rho and the ratio shift in t_{k+1} = t_k x / (4 (k+1)(k+1+shift)),
// x = y^2 lambda.
struct SeriesShape {
  double rho;
  double shift;
  double lead;  // coefficient of y^rho
};

SeriesShape shape(PhiKind kind, double a) {
  const double nu = (1.0 - a) / 2.0;
  if (kind == PhiKind::one) return {0.0, -nu, 1.0};
  return {1.0 - a, nu, 1.0 / (1.0 - a)};
}

// e (e-1) ... (e-d+1)
double falling(double e, int d) {
  double out = 1.0;
  for (int i = 0; i < d; ++i) out *= (e - i);
  return out;
}

// Shared driver: `advance` multiplies the running coefficient vector by the
// lambda (or T) factor; `norm` measures a term.
template <class V, class Advance, class Norm>
V sum_series(PhiKind kind, double y, const BesselParams& p, int deriv, V first, double scale,
             Advance&& advance, Norm&& norm) {
  p.validate();
  require(deriv >= 0 && deriv <= 2, "series derivative order must be 0, 1 or 2");
  require(y >= 0.0, "series is evaluated at y >= 0");
  if (kind == PhiKind::one) {
    const double nu = (1.0 - p.a) / 2.0;
    require(std::abs(nu - std::round(nu)) > 1e-12,
            "phi_1 series is undefined when (1-a)/2 is an integer");
  }
  const SeriesShape sh = shape(kind, p.a);
  if (y == 0.0) {
    // only the leading term can survive
    const double e = sh.rho;
    if (deriv == 0 && e == 0.0) return first * sh.lead;
    throw ValidationError("series derivative is singular at y = 0");
  }
  const double y2 = y * y;
  V coef = first * sh.lead;  // c_k T^k u without powers of y
  double ypow = std::pow(y, sh.rho - deriv);
  V sum = coef * (falling(sh.rho, deriv) * ypow);
  for (int k = 0; k < p.max_terms; ++k) {
    const double denom = 4.0 * (k + 1) * (k + 1 + sh.shift);
    coef = advance(coef) * (1.0 / denom);
    ypow *= y2;
    const double e = sh.rho + 2.0 * (k + 1);
    const V term = coef * (falling(e, deriv) * ypow);
    sum += term;
    const bool shrinking = y2 * scale / std::abs(denom) < 0.5;
    if (shrinking && norm(term) <= p.trunc_tol * norm(sum)) return sum;
    if (shrinking && norm(term) == 0.0) return sum;
  }
  throw NonConvergence("Bessel series did not reach its tolerance within max_terms",
                       std::numeric_limits<double>::quiet_NaN());
}

double matrix_norm(const Matrix& t) {
  return Eigen::JacobiSVD<Matrix>(t).singularValues()(0);
}

}  // namespace

Complex phi(PhiKind kind, double y, Complex lambda, const BesselParams& p, int deriv) {
  return sum_series<Complex>(
      kind, y, p, deriv, Complex(1.0), std::abs(lambda),
      [&](const Complex& c) { return c * lambda; }, [](const Complex& c) { return std::abs(c); });
}

Vector phi_op(PhiKind kind, double y, const Matrix& t, const Vector& u, const BesselParams& p,
              int deriv) {
  require(t.rows() == t.cols() && t.rows() == u.size(), "operator and vector sizes disagree");
  if (u.isZero(0.0)) return Vector::Zero(u.size());
  return sum_series<Vector>(
      kind, y, p, deriv, u, matrix_norm(t), [&](const Vector& v) { return Vector(t * v); },
      [](const Vector& v) { return v.norm(); });
}

Vector phi_particular(double y, const Matrix& t, const std::function<Vector(double)>& g,
                      const BesselParams& p, const QuadratureSpec& q, int deriv) {
  require(p.a > -1.0 && p.a < 1.0, "variation of parameters needs -1 < a < 1");
  require(y > 0.0, "particular solution is evaluated at y > 0");
  require(deriv == 0 || deriv == 1, "particular solution derivative order must be 0 or 1");
  auto i1 = [&](double s) { return Vector(phi_op(PhiKind::one, s, t, g(s), p) * std::pow(s, p.a)); };
  auto i2 = [&](double s) { return Vector(phi_op(PhiKind::two, s, t, g(s), p) * std::pow(s, p.a)); };
  const Vector a1 = checked(tanh_sinh(i1, 0.0, y, q), "phi_particular");
  const Vector a2 = checked(tanh_sinh(i2, 0.0, y, q), "phi_particular");
  // the boundary terms of d/dy cancel, so differentiating only the outer factors suffices
  return phi_op(PhiKind::two, y, t, a1, p, deriv) - phi_op(PhiKind::one, y, t, a2, p, deriv);
}

std::string to_string(IvpVerdict v) {
  switch (v) {
    case IvpVerdict::unique:
      return "unique";
    case IvpVerdict::forced_data:
      return "forced_data";
    case IvpVerdict::non_unique:
      return "non_unique";
  }
  return "unknown";
}

IvpVerdict ivp_classify(double a, double b) {
  require(a < 1.0, "Bessel coefficient a must be < 1");
  constexpr double kTie = 1e-12;
  if (std::abs(a - b) <= kTie) {
    // b = a < -1: y^b phi' ~ -(alpha lambda/(1+a)) y^{1+a} blows up unless alpha = 0
    return a >= -1.0 - kTie ? IvpVerdict::unique : IvpVerdict::forced_data;
  }
  return b < a ? IvpVerdict::forced_data : IvpVerdict::non_unique;
}

Vector ode_cross_solve(const Generator& g, double a, const Vector& u0, const Vector& v0, double y,
                       const BesselParams& p) {
  require(a > -1.0 && a < 1.0, "ode_cross_solve needs -1 < a < 1");
  require(y > 0.0, "ode_cross_solve is evaluated at y > 0");
  g.check_dim(u0);
  g.check_dim(v0);
  const Matrix t = -g.matrix();
  require(matrix_norm(t) * y * y <= 100.0,
          "series budget exceeded: ||L|| y^2 must not exceed 100");
  BesselParams pa = p;
  pa.a = a;
  return phi_op(PhiKind::one, y, t, u0, pa) + phi_op(PhiKind::two, y, t, v0, pa);
}

}  // namespace fracext
