#include "fracext/fracpow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracext/special.hpp"

namespace fracext {

FracOrder::FracOrder(double s) : s_(s) {
  require(std::isfinite(s) && s > 0.0, "fractional order must be a positive real");
  require(std::abs(s - std::round(s)) >= 1e-9, "fractional order must be noninteger");
  n_ = static_cast<int>(std::floor(s));
  sigma_ = s - n_;
}

Vector resolvent_frac_power(const Generator& g, double eps, double alpha, const Vector& u,
                            const QuadratureSpec& q) {
  require(eps >= 0.0, "resolvent shift must be nonnegative");
  require(alpha > 0.0, "resolvent power must be positive");
  g.check_dim(u);
  const double gamma = std::tgamma(alpha);

  if (q.scheme == Scheme::gauss_laguerre_generalized) {
    // t = x / beta, beta = geometric middle of Re(eps - lambda).
    const Eigen::ArrayXd re = eps - g.eigenvalues().real().array();
    const double beta = std::sqrt(re.minCoeff() * re.maxCoeff());
    const Vector w = g.to_eigen(u);
    auto f = [&](double x) {
      Vector out(w.size());
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        const Complex z = eps - g.eigenvalues()(i);
        out(i) = std::exp(x * (1.0 - z / beta)) * w(i);
      }
      return out;
    };
    const auto r = gauss_laguerre(f, alpha - 1.0, q);
    return g.from_eigen(checked(r, "resolvent_frac_power")) / (gamma * std::pow(beta, alpha));
  }

  // t^{alpha-1} e^{t(lambda-eps)} as a single exponential: the two factors
  // overflow and underflow separately at large t.
  auto f = [&](double t) -> Vector {
    const double log_t = std::log(t);
    return g.spectral_apply(
        [&](Complex lam) {
          const Complex z = (alpha - 1.0) * log_t + t * (lam - eps);
          return z.real() < -700.0 ? Complex(0.0) : std::exp(z);
        },
        u);
  };
  return checked(exp_sinh(f, q), "resolvent_frac_power") / gamma;
}

Vector balakrishnan(const Generator& g, const FracOrder& s, const Vector& u,
                    const QuadratureSpec& q) {
  require(s.n() == 0, "balakrishnan requires 0 < s < 1");
  g.check_dim(u);
  const double sv = s.s();
  const Vector au = -g.apply(u);

  // [0,1] with mu = v^{1/s}: mu^{s-1} dmu = dv / s.
  auto lower = [&](double v) -> Vector {
    const double mu = std::pow(v, 1.0 / sv);
    return shifted_solve(g, mu, 1.0, au) / sv;
  };
  // [1,inf) with mu = 1/nu, nu = z^{1/(1-s)}: integrand (I - nu L)^{-1} A u / (1-s).
  auto upper = [&](double z) -> Vector {
    const double nu = std::pow(z, 1.0 / (1.0 - sv));
    return shifted_solve(g, 1.0, nu, au) / (1.0 - sv);
  };
  const Vector lo = checked(tanh_sinh(lower, 0.0, 1.0, q), "balakrishnan");
  const Vector hi = checked(tanh_sinh(upper, 0.0, 1.0, q), "balakrishnan");
  return std::sin(sv * std::numbers::pi) / std::numbers::pi * (lo + hi);
}

Vector balakrishnan_general(const Generator& g, const FracOrder& s, const Vector& u,
                            const QuadratureSpec& q) {
  Vector an = g.apply_power(s.n(), u);
  if (s.n() % 2 == 1) an = -an;
  return balakrishnan(g, FracOrder(s.sigma()), an, q);
}

Vector balakrishnan_subtracted(const Generator& g, double s, const Vector& u,
                               const QuadratureSpec& q) {
  require(s > 0.0 && s < 2.0 && std::abs(s - 1.0) > 1e-9,
          "subtracted Balakrishnan form needs 0 < s < 2, s != 1");
  g.check_dim(u);
  const Vector au = -g.apply(u);
  const Vector a2u = -g.apply(au);

  // (mu + A)^{-1} - mu/(1+mu^2) = (mu + A)^{-1} (I - mu A) / (1 + mu^2)
  auto lower = [&](double v) -> Vector {
    const double mu = std::pow(v, 1.0 / s);
    return shifted_solve(g, mu, 1.0, Vector(au - mu * a2u)) / (s * (1.0 + mu * mu));
  };
  // mu = 1/nu: nu^{1-s} (I + nu A)^{-1} (nu I - A) A u / (1 + nu^2)
  auto upper = [&](double nu) -> Vector {
    return std::pow(nu, 1.0 - s) * shifted_solve(g, 1.0, nu, Vector(nu * au - a2u)) /
           (1.0 + nu * nu);
  };
  const Vector lo = checked(tanh_sinh(lower, 0.0, 1.0, q), "balakrishnan_subtracted");
  const Vector hi = checked(tanh_sinh(upper, 0.0, 1.0, q), "balakrishnan_subtracted");
  return std::sin(s * std::numbers::pi) / std::numbers::pi * (lo + hi) +
         std::sin(s * std::numbers::pi / 2.0) * au;
}

namespace {

void check_bbw_order(const FracOrder& s, int k) {
  require(k >= 1 && k > s.s(), "c(s,k) needs an integer k > s, k >= 1");
}

}  // namespace

double c_constant_direct(const FracOrder& s, int k) {
  check_bbw_order(s, k);
  const double sv = s.s();
  const QuadratureSpec q = QuadratureSpec::double_exponential(1e-14);
  // written as (expm1(-t)/t)^k t^{k-1-s} so that it stays finite as t -> 0
  auto head = [&](double t) {
    const double ratio = t > 0.0 ? std::expm1(-t) / t : -1.0;
    return std::pow(ratio, k) * std::pow(t, k - 1.0 - sv);
  };
  // t = v^{-1/s} on [1, inf): t^{-1-s} dt = dv / s
  auto tail = [&](double v) { return std::pow(std::expm1(-std::pow(v, -1.0 / sv)), k) / sv; };
  return checked(tanh_sinh(head, 0.0, 1.0, q), "c_constant") +
         checked(tanh_sinh(tail, 0.0, 1.0, q), "c_constant");
}

double c_constant_expsum(const FracOrder& s, int k) {
  check_bbw_order(s, k);
  const double sv = s.s();
  const int n = s.n();
  double coeff = 0.0;
  for (int j = 1; j <= k; ++j) {
    coeff += binomial(k, j) * ((k - j) % 2 == 0 ? 1.0 : -1.0) * std::pow(j, sv);
  }
  // \int_0^T t^{-1-s} F_n(t) dt numerically; beyond T the e^{-t} part is
  // negligible and the polynomial part integrates in closed form.
  constexpr double kSplit = 60.0;
  const QuadratureSpec q = QuadratureSpec::double_exponential(1e-14);
  auto body = [&](double t) { return std::pow(t, n - sv) * exp_taylor_remainder_scaled(n, t); };
  double reg = checked(tanh_sinh(body, 0.0, kSplit, q), "c_constant");
  // tail of -sum_{m<=n} (-1)^m t^{m-1-s} / m!
  for (int m = 0; m <= n; ++m) {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    reg -= sign / factorial(m) * (-std::pow(kSplit, m - sv) / (m - sv));
  }
  return coeff * reg;
}

double c_constant(const FracOrder& s, int k) {
  const double direct = c_constant_direct(s, k);
  const double expsum = c_constant_expsum(s, k);
  const double gap = std::abs(direct - expsum);
  if (gap > 1e-8 * std::max(1.0, std::abs(direct))) {
    throw NonConvergence("c(s,k) strategies disagree", gap);
  }
  return direct;
}

TraceEstimate bbw_frac_power_detailed(const Generator& g, const FracOrder& s, int k,
                                      const Vector& u, const QuadratureSpec& q,
                                      const BbwOptions& opts) {
  check_bbw_order(s, k);
  g.check_dim(u);
  require(opts.eps0 > 0.0 && opts.levels >= 2, "invalid epsilon schedule");
  const double sv = s.s();
  const double c = c_constant(s, k);

  auto increment_power = [&](double t) -> Vector {
    Vector v = u;
    for (int i = 0; i < k; ++i) {
      v = g.spectral_apply([t](Complex lam) { return expm1(t * lam); }, v);
    }
    return v;
  };

  std::vector<double> eps(opts.levels);
  std::vector<Vector> values;
  values.reserve(opts.levels);
  eps[0] = opts.eps0;
  for (int j = 1; j < opts.levels; ++j) eps[j] = eps[j - 1] * 0.5;

  // \int_{eps0}^\infty with t = eps0 v^{-1/s}.
  auto far = [&](double v) -> Vector {
    return increment_power(opts.eps0 * std::pow(v, -1.0 / sv));
  };
  Vector integral =
      checked(tanh_sinh(far, 0.0, 1.0, q), "bbw_frac_power") * (std::pow(opts.eps0, -sv) / sv);
  values.push_back(integral / c);
  for (int j = 1; j < opts.levels; ++j) {
    auto seg = [&](double t) -> Vector { return increment_power(t) * std::pow(t, -1.0 - sv); };
    integral += checked(tanh_sinh(seg, eps[j], eps[j - 1], q), "bbw_frac_power");
    values.push_back(integral / c);
  }

  std::vector<double> exponents;
  for (int i = 0; i + 1 < opts.levels; ++i) exponents.push_back(k - sv + i);

  TraceEstimate est;
  est.method = TraceMethod::bbw;
  est.y_sequence = eps;
  est.extrapolant_table = richardson(eps, std::move(values), exponents, opts.tol, 0.0);
  est.value = est.extrapolant_table.best;
  est.converged = est.extrapolant_table.converged;
  est.oracle_err = relative_error(est.value, spectral_frac_power(g, sv, u));
  return est;
}

Vector bbw_frac_power(const Generator& g, const FracOrder& s, int k, const Vector& u,
                      const QuadratureSpec& q, const BbwOptions& opts) {
  TraceEstimate est = bbw_frac_power_detailed(g, s, k, u, q, opts);
  if (!est.converged) {
    throw NonConvergence("bbw_frac_power: epsilon sequence is not Cauchy",
                         est.extrapolant_table.best_diff);
  }
  return est.value;
}

}  // namespace fracext
