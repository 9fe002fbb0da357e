#include "fracext/traces.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fracext/extension.hpp"
#include "fracext/parallel.hpp"
#include "fracext/special.hpp"

namespace fracext {

Constants trace_constants(const FracOrder& s) {
  const double sv = s.s();
  const int n = s.n();
  Constants c{};
  c.c_s = ((n + 1) % 2 == 0 ? 1.0 : -1.0) * std::tgamma(n + 1 - sv) /
          (std::pow(4.0, sv - (n + 0.5)) * std::tgamma(sv));
  if (n == 1) c.d_s = d_constant(s);
  return c;
}

double d_constant(const FracOrder& s) {
  const double sv = s.s();
  require(sv > 1.0 && sv < 2.0, "d_s is defined only for 1 < s < 2");
  return (std::pow(4.0, 1.0 - sv) - 1.0) * std::tgamma(1.0 - sv) / std::tgamma(1.0 + sv);
}

void YSchedule::validate() const {
  require(start > 0.0, "ygrid start must be positive");
  require(factor > 0.0 && factor < 1.0, "ygrid factor must lie in (0,1)");
  require(count >= 2, "ygrid needs at least two points");
}

std::vector<double> YSchedule::points(const Generator& g) const {
  validate();
  double y0 = start;
  if (adapt_to_spectrum) y0 = std::min(y0, kSpectralScale / std::sqrt(g.spectral_radius()));
  std::vector<double> ys(count);
  for (int j = 0; j < count; ++j) ys[j] = y0 * std::pow(factor, j);
  return ys;
}

namespace {

// Samples f on the schedule (in parallel) and extrapolates.
template <class F>
TraceEstimate extrapolate_trace(const Generator& g, double s, const Vector& u, TraceMethod method,
                                const std::vector<double>& ys, std::vector<double> exponents,
                                const TraceOptions& opts, F&& f) {
  std::vector<Vector> values(ys.size());
  parallel_for(static_cast<int>(ys.size()), [&](int j) { values[j] = f(ys[j]); });
  TraceEstimate est;
  est.method = method;
  est.y_sequence = ys;
  est.extrapolant_table = richardson(ys, std::move(values), exponents, opts.tol, 0.0);
  est.value = est.extrapolant_table.best;
  est.converged = est.extrapolant_table.converged;
  if (u.isZero(0.0)) {
    est.value = Vector::Zero(u.size());
    est.converged = true;
  }
  if (opts.with_oracle) est.oracle_err = relative_error(est.value, spectral_frac_power(g, s, u));
  return est;
}

int exponent_count(const std::vector<double>& ys) { return static_cast<int>(ys.size()) - 1; }

}  // namespace

TraceEstimate trace_neumann(const Generator& g, const FracOrder& s, const Vector& u,
                            const QuadratureSpec& q, const YSchedule& ys,
                            const TraceOptions& opts) {
  g.check_dim(u);
  const double sv = s.s();
  const int n = s.n();
  const double sigma = s.sigma();
  const double c = trace_constants(s).c_s;
  const auto pts = ys.points(g);
  // y^{1-2 sigma} d/dy (2/y d/dy)^n U = (y^{2-2 sigma}/2) (2/y d/dy)^{n+1} U
  auto sample = [&](double y) -> Vector {
    return radial_power_any(g, sv, u, n + 1, y, q) * (0.5 * std::pow(y, 2.0 - 2.0 * sigma) / c);
  };
  return extrapolate_trace(g, sv, u, TraceMethod::neumann_general, pts,
                           expansion_exponents(sv, n + 1, 2.0 - 2.0 * sigma, exponent_count(pts)),
                           opts, sample);
}

TraceEstimate trace_incremental(const Generator& g, const FracOrder& s, const Vector& u,
                                const QuadratureSpec& q, const YSchedule& ys,
                                const TraceOptions& opts) {
  g.check_dim(u);
  const double sv = s.s();
  require(s.n() <= 1, "incremental quotients need 0 < s < 1 or 1 < s < 2");
  const auto pts = ys.points(g);
  const auto exps = expansion_exponents(sv, 0, -2.0 * sv, exponent_count(pts));
  if (s.n() == 0) {
    const double scale = 2.0 * sv / trace_constants(s).c_s;
    auto sample = [&](double y) -> Vector {
      return (extend_subordination(g, s, u, y, q) - u) * (scale / std::pow(y, 2.0 * sv));
    };
    return extrapolate_trace(g, sv, u, TraceMethod::incremental_s01, pts, exps, opts, sample);
  }
  const double d = d_constant(s);
  auto sample = [&](double y) -> Vector {
    const Vector q2 = extend_subordination(g, s, u, 2.0 * y, q);
    const Vector q1 = extend_subordination(g, s, u, y, q);
    return (q2 - 4.0 * q1 + 3.0 * u) / (d * std::pow(y, 2.0 * sv));
  };
  return extrapolate_trace(g, sv, u, TraceMethod::incremental_s12, pts, exps, opts, sample);
}

bool InitialConditionReport::all_pass() const {
  return std::all_of(lines.begin(), lines.end(), [](const ConditionLine& l) { return l.pass; });
}

std::string InitialConditionReport::to_csv() const {
  std::ostringstream out;
  out << "form,kind,m,error,tol,pass\n";
  for (const auto& l : lines) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6e,%.1e", l.error, l.tol);
    out << l.form << "," << l.kind << "," << l.m << "," << buf << "," << (l.pass ? "true" : "false")
        << "\n";
  }
  return out.str();
}

InitialConditionReport initial_condition_suite(const Generator& g, const FracOrder& s,
                                               const Vector& u, const QuadratureSpec& q,
                                               const YSchedule& ys, double tol,
                                               double factor_tol) {
  g.check_dim(u);
  const double sv = s.s();
  const int n = s.n();
  const double sigma = s.sigma();
  const double a = 1.0 - 2.0 * sigma;
  const double c = trace_constants(s).c_s;
  const auto pts = ys.points(g);
  const int count = exponent_count(pts);

  // Per y: radial powers 0..n+1 and exact derivatives 0..2n+1.
  struct Sample {
    std::vector<Vector> radial;
    std::vector<Vector> derivs;
  };
  std::vector<Sample> samples(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int j) {
    const double y = pts[j];
    for (int m = 0; m <= n + 1; ++m) samples[j].radial.push_back(radial_power_any(g, sv, u, m, y, q));
    samples[j].derivs = y_derivatives(g, s, u, 2 * n + 1, y, q);
  });

  // Delta^m U and y^{1-2 sigma} d/dy Delta^m U through exact derivatives.
  auto operator_form = [&](int m, bool weighted, int j) -> Vector {
    const double y = pts[j];
    const DiffOp d = DiffOp::bessel(a);
    Vector out = Vector::Zero(u.size());
    DiffOp dj = DiffOp::identity();
    for (int i = 0; i <= m; ++i) {
      if (i > 0) dj = d.compose(dj);
      const DiffOp op = weighted ? DiffOp::derivative().compose(dj) : dj;
      out += binomial(m, i) * g.apply_power(m - i, op.apply(y, samples[j].derivs));
    }
    return weighted ? Vector(out * std::pow(y, 1.0 - 2.0 * sigma)) : out;
  };

  auto limit_of = [&](auto&& value_at, const std::vector<double>& exps) {
    std::vector<Vector> vals;
    for (std::size_t j = 0; j < pts.size(); ++j) vals.push_back(value_at(static_cast<int>(j)));
    return richardson(pts, std::move(vals), exps, 0.0, 0.0).best;
  };

  InitialConditionReport report;
  auto add = [&](std::string form, std::string kind, int m, Vector limit, Vector expected,
                 double line_tol) {
    ConditionLine line;
    line.form = std::move(form);
    line.kind = std::move(kind);
    line.m = m;
    line.error = (limit - expected).norm();
    line.tol = line_tol;
    line.pass = line.error <= line_tol;
    line.limit = std::move(limit);
    line.expected = std::move(expected);
    report.lines.push_back(std::move(line));
  };

  const Vector frac = spectral_frac_power(g, sv, u);
  const double nfact = factorial(n);
  Vector radial_neumann;
  Vector operator_neumann;
  for (int m = 0; m <= n; ++m) {
    const Vector lmu = g.apply_power(m, u) * (std::tgamma(sv - m) / std::tgamma(sv));
    add("radial", "value", m,
        limit_of([&](int j) { return samples[j].radial[m]; }, expansion_exponents(sv, m, 0.0, count)),
        lmu, tol);
    add("operator", "value", m,
        limit_of([&](int j) { return operator_form(m, false, j); },
                 expansion_exponents(sv, m, 0.0, count)),
        lmu * (nfact / factorial(n - m)), tol);

    const auto wexps = expansion_exponents(sv, m + 1, 2.0 - 2.0 * sigma, count);
    const Vector radial_w = limit_of(
        [&](int j) {
          return Vector(samples[j].radial[m + 1] * (0.5 * std::pow(pts[j], 2.0 - 2.0 * sigma)));
        },
        wexps);
    const Vector operator_w = limit_of([&](int j) { return operator_form(m, true, j); }, wexps);
    if (m < n) {
      add("radial", "weighted_derivative", m, radial_w, Vector::Zero(u.size()), tol);
      add("operator", "weighted_derivative", m, operator_w, Vector::Zero(u.size()), tol);
    } else {
      add("radial", "neumann", m, radial_w, c * frac, tol);
      add("operator", "neumann", m, operator_w, (c * nfact) * frac, tol);
      radial_neumann = radial_w;
      operator_neumann = operator_w;
    }
  }
  // operator-form Neumann limit / radial-form Neumann limit = [s]!
  ConditionLine factor;
  factor.form = "operator/radial";
  factor.kind = "factor";
  factor.m = n;
  factor.limit = operator_neumann;
  factor.expected = radial_neumann * nfact;
  factor.error = relative_error(factor.limit, factor.expected);
  factor.tol = factor_tol;
  factor.pass = factor.error <= factor_tol;
  report.lines.push_back(std::move(factor));
  return report;
}

MembershipResult domain_membership(const Generator& g, const FracOrder& s, const Vector& u,
                                   const QuadratureSpec& q, const YSchedule& ys,
                                   const TraceOptions& opts) {
  MembershipResult r;
  r.estimate = trace_neumann(g, s, u, q, ys, opts);
  r.member = r.estimate.converged;
  return r;
}

}  // namespace fracext
