#include "fracext/extension.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fracext/parallel.hpp"
#include "fracext/special.hpp"

namespace fracext {

// ---------------------------------------------------------------- tables

GaussianDerivative::GaussianDerivative(int m) : m_(m) {
  require(m >= 0, "derivative order must be nonnegative");
  std::map<std::pair<int, int>, double> cur{{{0, 0}, 1.0}};
  for (int step = 0; step < m; ++step) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [key, c] : cur) {
      const auto [p, q] = key;
      // d/dy [y^p beta^q e^{beta y^2}] = p y^{p-1} beta^q + 2 y^{p+1} beta^{q+1}
      if (p > 0) next[{p - 1, q}] += c * p;
      next[{p + 1, q + 1}] += 2.0 * c;
    }
    cur = std::move(next);
  }
  for (const auto& [key, c] : cur) terms_.push_back({c, key.first, key.second});
}

Complex GaussianDerivative::polynomial(double y, Complex beta) const {
  Complex sum = 0.0;
  for (const auto& t : terms_) sum += t.coef * std::pow(y, t.p) * std::pow(beta, t.q);
  return sum;
}

KernelDerivative::KernelDerivative(double s, int m) : s_(s), m_(m) {
  require(m >= 0, "derivative order must be nonnegative");
  std::vector<double> coef{1.0};  // indexed by b; y-exponent is 2s - m + 2b
  for (int step = 0; step < m; ++step) {
    std::vector<double> next(coef.size() + 1, 0.0);
    for (std::size_t b = 0; b < coef.size(); ++b) {
      const double a = 2.0 * s - step + 2.0 * b;
      next[b] += a * coef[b];
      next[b + 1] -= 0.5 * coef[b];
    }
    coef = std::move(next);
  }
  for (std::size_t b = 0; b < coef.size(); ++b) {
    if (coef[b] != 0.0) {
      terms_.push_back({coef[b], 2.0 * s - m + 2.0 * b, static_cast<int>(b)});
    }
  }
}

double KernelDerivative::evaluate(double y, double t) const {
  double sum = 0.0;
  for (const auto& term : terms_) sum += term.coef * std::pow(y, term.a) * std::pow(t, -term.b);
  return sum * std::exp(-y * y / (4.0 * t));
}

DiffOp DiffOp::identity() {
  DiffOp op;
  op.add(0, 0, 1.0);
  return op;
}

DiffOp DiffOp::bessel(double a) {
  DiffOp op;
  op.add(-1, 1, a);
  op.add(0, 2, 1.0);
  return op;
}

DiffOp DiffOp::radial() {
  DiffOp op;
  op.add(-1, 1, 2.0);
  return op;
}

DiffOp DiffOp::derivative() {
  DiffOp op;
  op.add(0, 1, 1.0);
  return op;
}

void DiffOp::add(int p, int q, double c) {
  if (c == 0.0) return;
  auto it = terms_.find({p, q});
  if (it == terms_.end()) {
    terms_.emplace(std::make_pair(p, q), c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

DiffOp DiffOp::compose(const DiffOp& other) const {
  DiffOp out;
  for (const auto& [k1, c1] : terms_) {
    const auto [p1, q1] = k1;
    for (const auto& [k2, c2] : other.terms_) {
      const auto [p2, q2] = k2;
      // y^{p1} D^{q1} (y^{p2} D^{q2}) = y^{p1} sum_i C(q1,i) (D^i y^{p2}) D^{q1-i+q2}
      double falling = 1.0;
      for (int i = 0; i <= q1; ++i) {
        if (i > 0) falling *= (p2 - i + 1);
        if (falling == 0.0) break;
        out.add(p1 + p2 - i, q1 - i + q2, c1 * c2 * binomial(q1, i) * falling);
      }
    }
  }
  return out;
}

DiffOp DiffOp::pow(int k) const {
  require(k >= 0, "operator power must be nonnegative");
  DiffOp out = identity();
  for (int i = 0; i < k; ++i) out = compose(out);
  return out;
}

DiffOp DiffOp::operator+(const DiffOp& other) const {
  DiffOp out = *this;
  for (const auto& [k, c] : other.terms_) out.add(k.first, k.second, c);
  return out;
}

DiffOp DiffOp::operator-(const DiffOp& other) const { return *this + other.scaled(-1.0); }

DiffOp DiffOp::scaled(double c) const {
  DiffOp out;
  for (const auto& [k, v] : terms_) out.add(k.first, k.second, c * v);
  return out;
}

int DiffOp::max_derivative() const {
  int q = 0;
  for (const auto& [k, c] : terms_) q = std::max(q, k.second);
  return q;
}

Vector DiffOp::apply(double y, const std::vector<Vector>& derivs) const {
  require(static_cast<int>(derivs.size()) > max_derivative(),
          "not enough derivatives supplied for the differential operator");
  Vector out = Vector::Zero(derivs.at(0).size());
  for (const auto& [k, c] : terms_) out += (c * std::pow(y, k.first)) * derivs[k.second];
  return out;
}

// ---------------------------------------------------------------- helpers

double helper_F(int n, double r) { return exp_taylor_remainder(n, r); }

Vector helper_S(const Generator& g, const Vector& u, double s, int n, int big_n, double r) {
  require(n >= 0 && n <= big_n + 1, "helper_S needs 0 <= n <= N + 1");
  g.check_dim(u);
  Vector out = Vector::Zero(u.size());
  const double gs = std::tgamma(s);
  Vector ak = g.apply_power(n, u);  // L^k u, advanced below
  for (int k = n; k <= big_n; ++k) {
    if (k > n) ak = g.apply(ak);
    const double sign_ak = (k % 2 == 0) ? 1.0 : -1.0;  // (-L)^k = (-1)^k L^k
    const double sign = ((k - n) % 2 == 0) ? 1.0 : -1.0;
    const double c = sign * std::pow(r, k - n) / factorial(k - n) * std::tgamma(s - k) / gs;
    out += (c * sign_ak) * ak;
  }
  return out;
}

namespace {

constexpr double kUnderflowExponent = -700.0;

// \int_0^\infty e^{-r} r^{alpha} K(r) dr in eigen coordinates. The kernel
// receives (r, log of the weight) and folds the weight into its exponential
// so that r^{alpha} e^{-r} and e^{(y^2/4r) lambda} never meet as separate,
// over/underflowing factors.
template <class K>
Vector weighted_r_integral(double alpha, double alpha_laguerre, K&& kernel,
                           const QuadratureSpec& q, const char* what) {
  if (q.scheme == Scheme::gauss_laguerre_generalized) {
    auto f = [&](double x) { return Vector(kernel(x, (alpha - alpha_laguerre) * std::log(x))); };
    return checked(gauss_laguerre(f, alpha_laguerre, q), what);
  }
  auto f = [&](double r) { return Vector(kernel(r, -r + alpha * std::log(r))); };
  return checked(exp_sinh(f, q), what);
}

// m-th y-derivative of \int e^{-r} r^{s-1} e^{(y^2/4r)L} u dr in eigen coordinates.
Vector derivative_eigen(const Generator& g, double s, const Vector& w, int m, double y,
                        const QuadratureSpec& q) {
  const GaussianDerivative table(m);
  const Vector& lam = g.eigenvalues();
  auto kernel = [&](double r, double lw) {
    Vector out(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const Complex beta = lam(i) / (4.0 * r);
      const Complex e = lw + beta * y * y;
      out(i) = e.real() < kUnderflowExponent
                   ? Complex(0.0)
                   : std::exp(e) * table.polynomial(y, beta) * w(i);
    }
    return out;
  };
  return weighted_r_integral(s - 1.0, s - 1.0, kernel, q, "y_derivative") / std::tgamma(s);
}

// \int_0^\infty F_N(r) r^{p} e^{(y^2/4r)L} f dr in eigen coordinates.
// Requires N + 1 + p > -1 (integrable at 0) and N + p < -1 (at infinity).
Vector remainder_integral_eigen(const Generator& g, const Vector& wf, int big_n, double p,
                                double y) {
  const Vector& lam = g.eigenvalues();
  auto fr = [&](double r) {
    if (r < 0.5) return exp_taylor_remainder_scaled(big_n, r) * std::pow(r, big_n + 1 + p);
    if (r <= 700.0) return exp_taylor_remainder(big_n, r) * std::pow(r, p);
    // e^{-r} is negligible against the polynomial part here
    double sum = 0.0;
    for (int k = 0; k <= big_n; ++k) {
      sum -= ((k % 2 == 0) ? 1.0 : -1.0) * std::pow(r, k + p) / factorial(k);
    }
    return sum;
  };
  auto kernel = [&](double r) {
    const double weight = fr(r);
    Vector out(wf.size());
    for (Eigen::Index i = 0; i < wf.size(); ++i) {
      const Complex e = lam(i) * (y * y / (4.0 * r));
      out(i) = e.real() < kUnderflowExponent ? Complex(0.0) : weight * std::exp(e) * wf(i);
    }
    return out;
  };
  return checked(exp_sinh(kernel, QuadratureSpec::double_exponential()), "remainder integral");
}

}  // namespace

Vector extend_subordination(const Generator& g, const FracOrder& s, const Vector& u, double y,
                            const QuadratureSpec& q) {
  require(y > 0.0, "extension is evaluated at y > 0");
  const Vector w = g.to_eigen(u);
  if (w.isZero(0.0)) return Vector::Zero(u.size());
  return g.from_eigen(derivative_eigen(g, s.s(), w, 0, y, q));
}

Vector extend_explicit(const Generator& g, const FracOrder& s, const Vector& u, double y,
                       const QuadratureSpec& q) {
  require(y >= 0.0, "extension is evaluated at y >= 0");
  q.validate();
  g.check_dim(u);
  if (y == 0.0) return u;
  const double sv = s.s();
  const int n = s.n();
  // Taylor part: S_{0,n}(y^2/4)
  Vector out = helper_S(g, u, sv, 0, n, y * y / 4.0);
  const Vector wf = g.to_eigen(spectral_frac_power(g, sv, u));
  const Vector rem = remainder_integral_eigen(g, wf, n, -1.0 - sv, y);
  out += g.from_eigen(rem) * (std::pow(y, 2.0 * sv) / (std::pow(4.0, sv) * std::tgamma(sv)));
  return out;
}

int max_derivative_order(const FracOrder& s) { return 2 * (s.n() + 2); }

Vector y_derivative(const Generator& g, const FracOrder& s, const Vector& u, int m, double y,
                    const QuadratureSpec& q) {
  require(y > 0.0, "derivatives are evaluated at y > 0");
  require(m >= 0 && m <= max_derivative_order(s),
          "derivative order " + std::to_string(m) + " exceeds the cap 2([s]+2) = " +
              std::to_string(max_derivative_order(s)));
  const Vector w = g.to_eigen(u);
  if (w.isZero(0.0)) return Vector::Zero(u.size());
  return g.from_eigen(derivative_eigen(g, s.s(), w, m, y, q));
}

std::vector<Vector> y_derivatives(const Generator& g, const FracOrder& s, const Vector& u, int m,
                                  double y, const QuadratureSpec& q) {
  std::vector<Vector> out;
  out.reserve(m + 1);
  for (int k = 0; k <= m; ++k) out.push_back(y_derivative(g, s, u, k, y, q));
  return out;
}

Vector y_derivative_kernel(const Generator& g, const FracOrder& s, const Vector& u, int m,
                           double y, const QuadratureSpec& q) {
  require(y > 0.0, "derivatives are evaluated at y > 0");
  const double sv = s.s();
  const KernelDerivative table(sv, m);
  const Vector w = g.to_eigen(u);
  const Vector& lam = g.eigenvalues();
  const double ly = std::log(y);
  auto f = [&](double t) {
    const double lt = std::log(t);
    Vector out = Vector::Zero(w.size());
    for (const auto& term : table.terms()) {
      const double base = term.a * ly - (term.b + 1.0 + sv) * lt - y * y / (4.0 * t);
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        const Complex e = base + t * lam(i);
        if (e.real() >= kUnderflowExponent) out(i) += term.coef * std::exp(e) * w(i);
      }
    }
    return out;
  };
  const Vector integral = checked(exp_sinh(f, q), "y_derivative_kernel");
  return g.from_eigen(integral) / (std::pow(4.0, sv) * std::tgamma(sv));
}

std::string to_string(RadialMode mode) { return mode == RadialMode::from_u ? "from_u" : "from_f"; }

RadialMode radial_mode_from_string(const std::string& name) {
  if (name == "from_u") return RadialMode::from_u;
  if (name == "from_f") return RadialMode::from_f;
  throw ValidationError("unknown radial mode '" + name + "'");
}

Vector radial_power_any(const Generator& g, double s, const Vector& u, int m, double y,
                        const QuadratureSpec& q) {
  require(y > 0.0, "radial derivatives are evaluated at y > 0");
  require(m >= 0, "radial order must be nonnegative");
  const Vector w = g.to_eigen(u);
  if (w.isZero(0.0)) return Vector::Zero(u.size());
  const Vector& lam = g.eigenvalues();
  // (2/y d/dy) e^{lambda y^2/(4r)} = (lambda/r) e^{lambda y^2/(4r)}
  auto kernel = [&](double r, double lw) {
    Vector out(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      const Complex e = lw + lam(i) * (y * y / (4.0 * r));
      out(i) = e.real() < kUnderflowExponent ? Complex(0.0)
                                             : std::exp(e) * std::pow(lam(i), m) * w(i);
    }
    return out;
  };
  const Vector integral = weighted_r_integral(s - m - 1.0, s - 1.0, kernel, q, "radial_power");
  return g.from_eigen(integral) / std::tgamma(s);
}

Vector radial_power(const Generator& g, const FracOrder& s, const Vector& u, int m, double y,
                    const QuadratureSpec& q, RadialMode mode) {
  require(m >= 0 && m <= s.n() + 1, "radial order must satisfy 0 <= m <= [s]+1");
  if (mode == RadialMode::from_u) return radial_power_any(g, s.s(), u, m, y, q);

  require(y > 0.0, "radial derivatives are evaluated at y > 0");
  const double sv = s.s();
  const int n = s.n();
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  Vector out = sign * helper_S(g, u, sv, m, n, y * y / 4.0);
  const Vector wf = g.to_eigen(spectral_frac_power(g, sv, u));
  const Vector rem = remainder_integral_eigen(g, wf, n - m, -1.0 - sv + m, y);
  out += g.from_eigen(rem) *
         (sign * std::pow(y, 2.0 * (sv - m)) / (std::pow(4.0, sv - m) * std::tgamma(sv)));
  return out;
}

double normalization_check(const FracOrder& s, double y, const QuadratureSpec& q) {
  require(y > 0.0, "normalization is evaluated at y > 0");
  const double sv = s.s();
  const double ly = std::log(y);
  const double lnorm = sv * std::log(4.0) + std::lgamma(sv);
  auto f = [&](double t) {
    return std::exp(2.0 * sv * ly - (1.0 + sv) * std::log(t) - y * y / (4.0 * t) - lnorm);
  };
  QuadratureSpec spec = q;
  spec.scheme = Scheme::tanh_sinh_adaptive;
  return checked(exp_sinh(f, spec), "normalization_check");
}

Vector apply_bessel_power(const Generator& g, double a, int k, double y,
                          const std::vector<Vector>& derivs) {
  require(static_cast<int>(derivs.size()) > 2 * k, "need derivatives up to order 2k");
  const DiffOp d = DiffOp::bessel(a);
  Vector out = Vector::Zero(derivs[0].size());
  DiffOp dj = DiffOp::identity();
  for (int j = 0; j <= k; ++j) {
    if (j > 0) dj = d.compose(dj);
    out += binomial(k, j) * g.apply_power(k - j, dj.apply(y, derivs));
  }
  return out;
}

double pde_residual(const Generator& g, const FracOrder& s, const Vector& u, double y,
                    const QuadratureSpec& q, ResidualOrder order) {
  const double norm_u = u.norm();
  if (norm_u == 0.0) return 0.0;
  if (order == ResidualOrder::second) {
    const auto d = y_derivatives(g, s, u, 2, y, q);
    const Vector r = g.apply(d[0]) + ((1.0 - 2.0 * s.s()) / y) * d[1] + d[2];
    return r.norm() / norm_u;
  }
  const int k = s.n() + 1;
  const auto d = y_derivatives(g, s, u, 2 * k, y, q);
  return apply_bessel_power(g, 1.0 - 2.0 * s.sigma(), k, y, d).norm() / norm_u;
}

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace

std::string ExtensionProfile::to_csv() const {
  std::ostringstream out;
  const Eigen::Index dim = source_u.size();
  const std::size_t orders = derivs.empty() ? 1 : derivs.front().size();
  out << "# s=" << fmt(order_s.s()) << ",dim=" << dim << ",scheme=" << to_string(scheme) << "\n";
  out << "y";
  for (std::size_t m = 0; m < orders; ++m) {
    const std::string name = m == 0 ? "U" : (m == 1 ? "dU" : "d" + std::to_string(m) + "U");
    for (Eigen::Index i = 1; i <= dim; ++i) {
      out << ",re(" << name << "_" << i << "),im(" << name << "_" << i << ")";
    }
  }
  out << "\n";
  for (std::size_t j = 0; j < ygrid.size(); ++j) {
    out << fmt(ygrid[j]);
    for (std::size_t m = 0; m < orders; ++m) {
      const Vector& v = derivs.empty() ? values[j] : derivs[j][m];
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        out << "," << fmt(v(i).real()) << "," << fmt(v(i).imag());
      }
    }
    out << "\n";
  }
  return out.str();
}

ExtensionProfile build_profile(const Generator& g, const FracOrder& s, const Vector& u,
                               const std::vector<double>& ygrid, const QuadratureSpec& q) {
  g.check_dim(u);
  require(!ygrid.empty(), "profile grid is empty");
  for (std::size_t j = 0; j < ygrid.size(); ++j) {
    require(ygrid[j] > 0.0, "profile grid must be positive");
    if (j > 0) require(ygrid[j] > ygrid[j - 1], "profile grid must be strictly increasing");
  }
  ExtensionProfile p;
  p.ygrid = ygrid;
  p.order_s = s;
  p.source_u = u;
  p.scheme = q.scheme;
  p.values.resize(ygrid.size());
  p.derivs.resize(ygrid.size());
  const int top = 2 * (s.n() + 1);
  parallel_for(static_cast<int>(ygrid.size()), [&](int j) {
    p.derivs[j] = y_derivatives(g, s, u, top, ygrid[j], q);
    p.values[j] = p.derivs[j][0];
  });
  return p;
}

}  // namespace fracext
