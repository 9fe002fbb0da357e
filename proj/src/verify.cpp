#include "fracext/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "fracext/bessel.hpp"
#include "fracext/extension.hpp"
#include "fracext/io.hpp"
#include "fracext/run.hpp"
#include "fracext/traces.hpp"

namespace fracext {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3e", x);
  return buf;
}

// Runs `body` and records the worst error it reports; exceptions fail the check.
template <class F>
Check measure(int criterion, std::string name, double tol, F&& body) {
  Check c;
  c.criterion = criterion;
  c.name = std::move(name);
  c.tol = tol;
  try {
    c.value = body(c.detail);
    c.pass = std::isfinite(c.value) && c.value <= tol;
  } catch (const std::exception& e) {
    c.value = kInf;
    c.pass = false;
    c.detail = e.what();
  }
  return c;
}

Generator diagonal(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  int i = 0;
  for (double x : d) {
    m(i, i) = x;
    ++i;
  }
  return Generator(m);
}

double rel(const Vector& a, const Vector& b) { return relative_error(a, b); }

// Rows "index,re,im" of a vector result; header and comment lines skipped.
Vector parse_vector_csv(const std::string& csv, int n) {
  Vector value = Vector::Zero(n);
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("index", 0) == 0) continue;
    int idx = 0;
    double re = 0.0, im = 0.0;
    if (std::sscanf(line.c_str(), "%d,%lf,%lf", &idx, &re, &im) != 3 || idx < 0 || idx >= n)
      throw ValidationError("unexpected output row: " + line);
    value(idx) = Complex(re, im);
    ++rows;
  }
  if (rows != n) throw ValidationError("expected " + std::to_string(n) + " output rows");
  return value;
}

double op_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

}  // namespace

bool VerifyReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerifyReport::append(const VerifyReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerifyReport::to_csv() const {
  std::ostringstream out;
  out << "criterion,check,value,tol,pass,detail\n";
  for (const auto& c : checks) {
    std::string detail = c.detail;
    for (char& ch : detail)
      if (ch == ',' || ch == '\n') ch = ';';
    out << c.criterion << "," << c.name << "," << fmt(c.value) << "," << fmt(c.tol) << ","
        << (c.pass ? "pass" : "FAIL") << "," << detail << "\n";
  }
  return out.str();
}

VerifyReport invariant_checks(const Generator& g, const FracOrder& s, const Vector& u,
                              const QuadratureSpec& q) {
  VerifyReport r;
  auto add = [&](std::string name, double tol, auto&& body) {
    r.checks.push_back(measure(0, std::move(name), tol, body));
  };
  const double sv = s.s();
  const Vector oracle = spectral_frac_power(g, sv, u);
  const double unorm = std::max(u.norm(), 1e-300);

  add("semigroup law", 1e-11, [&](std::string&) {
    double worst = 0.0;
    for (double t1 : {0.0, 0.3, 2.0, 7.5})
      for (double t2 : {0.1, 1.0, 2.5}) {
        const Vector lhs = semigroup_apply(g, t1 + t2, u);
        const Vector rhs = semigroup_apply(g, t1, semigroup_apply(g, t2, u));
        worst = std::max(worst, (lhs - rhs).norm() / unorm);
      }
    return worst;
  });
  add("semigroup uniform bound excess", 1e-12, [&](std::string&) {
    double worst = 0.0;
    for (int i = 0; i <= 50; ++i) {
      const double ratio = semigroup_apply(g, 0.2 * i, u).norm() / unorm;
      worst = std::max(worst, ratio / g.bound() - 1.0);
    }
    return std::max(worst, 0.0);
  });
  add("generator limit order deficit", 0.0, [&](std::string& d) {
    // Observed order of (S_h u - u)/h -> Lu must be at least 0.9.
    const double scale = 1.0 / g.spectral_radius();
    double e1 = 0.0, e2 = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double h = scale * std::pow(10.0, -2 - j);
      const double e = ((semigroup_apply(g, h, u) - u) / h - g.apply(u)).norm();
      (j == 0 ? e1 : e2) = e;
    }
    const double order = std::log10(e1 / e2);
    d = "order " + fmt(order);
    return std::max(0.0, 0.9 - order);
  });
  add("nonnegativity constant excess", 1e-9, [&](std::string&) {
    return std::max(0.0, nonnegativity_constant(g) / g.bound() - 1.0);
  });
  add("unit power is -L", 1e-12, [&](std::string&) {
    return rel(spectral_frac_power(g, 1.0, u), -g.apply(u));
  });
  add("power additivity", 1e-12, [&](std::string&) {
    return rel(spectral_frac_power(g, 0.5 * sv, spectral_frac_power(g, 0.5 * sv, u)), oracle);
  });
  add("balakrishnan vs spectral", 1e-7, [&](std::string&) {
    return rel(balakrishnan_general(g, s, u, q), oracle);
  });
  add("bbw vs spectral", 1e-4, [&](std::string&) {
    return *bbw_frac_power_detailed(g, s, s.n() + 1, u, q).oracle_err;
  });
  add("resolvent power vs inverse power", 1e-8, [&](std::string&) {
    return rel(resolvent_frac_power(g, 0.0, sv, u, q), spectral_frac_power(g, -sv, u));
  });
  add("kernel normalization", 1e-10, [&](std::string&) {
    double worst = 0.0;
    for (double y : {0.1, 1.0, 10.0}) worst = std::max(worst, std::abs(normalization_check(s, y, q) - 1.0));
    return worst;
  });
  add("second-order extension residual", 1e-8, [&](std::string&) {
    double worst = 0.0;
    for (double y : {0.1, 1.0, 5.0})
      worst = std::max(worst, pde_residual(g, s, u, y, q, ResidualOrder::second));
    return worst;
  });
  add("higher-order extension residual", 1e-7, [&](std::string&) {
    double worst = 0.0;
    for (double y : {0.1, 1.0, 5.0})
      worst = std::max(worst, pde_residual(g, s, u, y, q, ResidualOrder::higher));
    return worst;
  });
  add("explicit vs subordination", 1e-8, [&](std::string&) {
    double worst = 0.0;
    for (double y : {0.1, 1.0, 3.0})
      worst = std::max(worst, rel(extend_explicit(g, s, u, y, q), extend_subordination(g, s, u, y, q)));
    return worst;
  });
  add("radial modes agree", 1e-7, [&](std::string&) {
    double worst = 0.0;
    for (int m = 0; m <= s.n() + 1; ++m)
      for (double y : {0.1, 1.0}) {
        const Vector a = radial_power(g, s, u, m, y, q, RadialMode::from_u);
        const Vector b = radial_power(g, s, u, m, y, q, RadialMode::from_f);
        worst = std::max(worst, rel(b, a));
      }
    return worst;
  });
  add("extension bounded by M|u|", 1e-12, [&](std::string&) {
    double worst = 0.0;
    for (double y : {0.05, 0.5, 2.0, 8.0})
      worst = std::max(worst, extend_subordination(g, s, u, y, q).norm() / (g.bound() * unorm) - 1.0);
    return std::max(worst, 0.0);
  });
  add("neumann trace vs spectral", 1e-5, [&](std::string&) {
    return *trace_neumann(g, s, u, q).oracle_err;
  });
  if (s.n() <= 1) {
    add("incremental trace vs spectral", 1e-3, [&](std::string&) {
      return *trace_incremental(g, s, u, q).oracle_err;
    });
  }
  const auto ic = initial_condition_suite(g, s, u, q);
  for (const auto& line : ic.lines) {
    r.checks.push_back(Check{0, "initial condition " + line.form + " " + line.kind + " m=" + std::to_string(line.m),
                             line.error, line.tol, line.pass, ""});
  }
  if (s.n() == 0) {
    add("bessel series reconstruction", 1e-6, [&](std::string& d) {
      const double ymax = std::min(1.5, std::sqrt(100.0 / op_norm(g.matrix())));
      d = "y up to " + fmt(ymax);
      const Vector v0 = trace_constants(s).c_s * oracle;
      double worst = 0.0;
      for (int i = 0; i <= 10; ++i) {
        const double y = 0.05 + (ymax - 0.05) * i / 10.0;
        worst = std::max(worst, rel(ode_cross_solve(g, 1.0 - 2.0 * sv, u, v0, y),
                                    extend_subordination(g, s, u, y, q)));
      }
      return worst;
    });
  }
  return r;
}

VerifyReport acceptance_checks(const AcceptanceOptions& opts) {
  VerifyReport r;
  const QuadratureSpec q;
  auto add = [&](int n, std::string name, double tol, auto&& body) {
    r.checks.push_back(measure(n, std::move(name), tol, body));
  };

  add(1, "scalar profile equals exp(-y)", 1e-8, [&](std::string&) {
    const Generator g = diagonal({-1.0});
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const double y = 0.1 * i;
      const Vector v = extend_subordination(g, FracOrder(0.5), Vector::Ones(1), y, q);
      worst = std::max(worst, std::abs(v(0) - std::exp(-y)));
    }
    return worst;
  });

  add(2, "kernel normalization", 1e-10, [&](std::string&) {
    double worst = 0.0;
    for (double s : {0.3, 0.5, 1.5, 2.7})
      for (double y : {0.1, 1.0, 10.0})
        worst = std::max(worst, std::abs(normalization_check(FracOrder(s), y, q) - 1.0));
    return worst;
  });

  {
    constexpr int kSeeds = 20;
    const std::vector<double> orders = {0.3, 0.5, 1.5, 2.7};
    double bal = 0.0, bbw = 0.0, neu = 0.0, inc = 0.0;
    std::string failure;
    try {
      for (int seed = 1; seed <= kSeeds; ++seed) {
        const Generator g = random_generator(8, seed);
        const Vector u = vector_source("random:" + std::to_string(seed), 8);
        for (double sv : orders) {
          const FracOrder s(sv);
          const Vector oracle = spectral_frac_power(g, sv, u);
          bal = std::max(bal, rel(balakrishnan_general(g, s, u, q), oracle));
          bbw = std::max(bbw, *bbw_frac_power_detailed(g, s, s.n() + 1, u, q).oracle_err);
          neu = std::max(neu, *trace_neumann(g, s, u, q).oracle_err);
          if (s.n() <= 1) inc = std::max(inc, *trace_incremental(g, s, u, q).oracle_err);
        }
      }
    } catch (const std::exception& e) {
      failure = e.what();
      bal = bbw = neu = inc = kInf;
    }
    const std::string detail = "balakrishnan " + fmt(bal) + "; bbw " + fmt(bbw) + "; neumann " +
                               fmt(neu) + "; incremental " + fmt(inc) + failure;
    const bool pass = bal <= 1e-7 && bbw <= 1e-4 && neu <= 1e-5 && inc <= 1e-3;
    // Largest error relative to its own tolerance.
    const double worst = std::max({bal / 1e-7, bbw / 1e-4, neu / 1e-5, inc / 1e-3});
    r.checks.push_back(Check{3, "oracle reconciliation on random generators (error/tol)", worst,
                             1.0, pass, detail});
  }

  const Generator two = diagonal({-1.0, -4.0});
  const Vector ones2 = Vector::Ones(2);
  InitialConditionReport ic;
  std::string ic_error;
  try {
    ic = initial_condition_suite(two, FracOrder(2.5), ones2, q);
  } catch (const std::exception& e) {
    ic_error = e.what();
  }

  add(4, "trace constants and operator/radial factor", 1.0, [&](std::string& d) {
    if (!ic_error.empty()) throw NonConvergence(ic_error, kInf);
    const double e1 = std::abs(trace_constants(FracOrder(0.5)).c_s + 1.0);
    const double e2 = std::abs(trace_constants(FracOrder(1.5)).c_s - 2.0);
    const double e3 = std::abs(d_constant(FracOrder(1.5)) - 4.0 / 3.0);
    double reduced = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double s = (i < 10) ? 0.05 + 0.09 * i : 1.05 + 0.09 * (i - 10);
      const double closed = s < 1.0
                                ? -std::tgamma(1.0 - s) / (std::pow(4.0, s - 0.5) * std::tgamma(s))
                                : std::tgamma(2.0 - s) / (std::pow(4.0, s - 1.5) * std::tgamma(s));
      reduced = std::max(reduced, std::abs(trace_constants(FracOrder(s)).c_s - closed) /
                                      std::max(1.0, std::abs(closed)));
    }
    double factor = kInf;
    for (const auto& line : ic.lines)
      if (line.kind == "factor") factor = line.error;
    d = "constants " + fmt(std::max({e1, e2, e3})) + "; reduced forms " + fmt(reduced) +
        "; factor " + fmt(factor);
    return std::max({std::max({e1, e2, e3}) / 1e-14, reduced / 1e-12, factor / 1e-5});
  });

  add(5, "initial-condition table at s=2.5", 1e-4, [&](std::string& d) {
    if (!ic_error.empty()) throw NonConvergence(ic_error, kInf);
    double worst = 0.0;
    int lines = 0;
    for (const auto& line : ic.lines) {
      if (line.form != "radial") continue;
      const bool value = line.kind == "value" && line.m <= 2;
      const bool weighted = line.kind == "weighted_derivative" && line.m <= 1;
      if (!value && !weighted) continue;
      worst = std::max(worst, line.error);
      ++lines;
    }
    d = std::to_string(lines) + " lines";
    return lines == 5 ? worst : kInf;
  });

  add(6, "extension residuals (error/tol)", 1.0, [&](std::string& d) {
    double second = 0.0, higher = 0.0;
    for (int seed = 1; seed <= 3; ++seed) {
      const Generator g = random_generator(8, seed);
      const Vector u = vector_source("random:" + std::to_string(seed), 8);
      for (double sv : {0.3, 1.5, 2.7})
        for (double y : {0.1, 1.0, 5.0}) {
          second = std::max(second, pde_residual(g, FracOrder(sv), u, y, q, ResidualOrder::second));
          higher = std::max(higher, pde_residual(g, FracOrder(sv), u, y, q, ResidualOrder::higher));
        }
    }
    d = "second " + fmt(second) + "; higher " + fmt(higher);
    return std::max(second / 1e-8, higher / 1e-7);
  });

  add(7, "bessel reconstruction and IVP classification", 1e-6, [&](std::string& d) {
    double worst = 0.0;
    for (int seed = 1; seed <= 3; ++seed) {
      const Generator g = random_generator(4, seed, -3.5, -0.5);
      const double norm = op_norm(g.matrix());
      if (norm > 4.0) throw ValidationError("test generator norm exceeds 4");
      const Vector u = vector_source("random:" + std::to_string(seed), 4);
      for (double sv : {0.3, 0.6}) {
        const FracOrder s(sv);
        const Vector v0 = trace_constants(s).c_s * spectral_frac_power(g, sv, u);
        for (int i = 0; i <= 29; ++i) {
          const double y = 0.05 + (1.5 - 0.05) * i / 29.0;
          worst = std::max(worst, rel(ode_cross_solve(g, 1.0 - 2.0 * sv, u, v0, y),
                                      extend_subordination(g, s, u, y, q)));
        }
      }
    }
    int wrong = 0;
    for (double a : {-1.0, -0.5, 0.0, 0.4, 0.9}) {
      wrong += ivp_classify(a, a) != IvpVerdict::unique;
      wrong += ivp_classify(a, a + 0.3) != IvpVerdict::non_unique;
      wrong += ivp_classify(a, a - 0.3) != IvpVerdict::forced_data;
    }
    d = "reconstruction " + fmt(worst) + "; misclassified " + std::to_string(wrong);
    return wrong == 0 ? worst : kInf;
  });

  add(8, "c(s;k) by two quadrature strategies", 1e-8, [&](std::string& d) {
    const double target = -2.0 * std::sqrt(std::numbers::pi);
    double worst = std::max(std::abs(c_constant_direct(FracOrder(0.5), 1) - target),
                            std::abs(c_constant_expsum(FracOrder(0.5), 1) - target));
    double agree = 0.0;
    for (auto [sv, k] : {std::pair{0.3, 1}, std::pair{0.5, 1}, std::pair{1.5, 2}, std::pair{2.7, 3}}) {
      const FracOrder s(sv);
      agree = std::max(agree, std::abs(c_constant_direct(s, k) - c_constant_expsum(s, k)));
    }
    d = "closed form " + fmt(worst) + "; agreement " + fmt(agree);
    return std::max(worst, agree);
  });

  add(9, "explicit vs subordination and radial modes (error/tol)", 1.0, [&](std::string& d) {
    const Generator g = diagonal({-0.5, -1.0, -3.0, -7.0});
    const Vector u = vector_source("random:9", 4);
    const FracOrder s(2.5);
    double rep = 0.0, radial = 0.0;
    for (double y : {0.1, 1.0, 3.0}) {
      rep = std::max(rep, rel(extend_explicit(g, s, u, y, q), extend_subordination(g, s, u, y, q)));
      for (int m = 0; m <= s.n() + 1; ++m)
        radial = std::max(radial, rel(radial_power(g, s, u, m, y, q, RadialMode::from_f),
                                      radial_power(g, s, u, m, y, q, RadialMode::from_u)));
    }
    d = "representations " + fmt(rep) + "; radial " + fmt(radial);
    return std::max(rep / 1e-8, radial / 1e-7);
  });

  add(10, "trace_neumann demo on laplacian1d:32", 1e-6, [&](std::string& d) {
    constexpr int n = 32;
    Vector ref = Vector::Zero(n);
    const Vector u = Vector::Ones(n);
    for (int k = 1; k <= n; ++k) {
      const double lam = 4.0 * std::pow(std::sin(k * std::numbers::pi / (2.0 * (n + 1))), 2) *
                         (n + 1) * (n + 1);
      Vector phi(n);
      for (int i = 0; i < n; ++i)
        phi(i) = std::sqrt(2.0 / (n + 1)) * std::sin((i + 1) * k * std::numbers::pi / (n + 1));
      ref += std::sqrt(lam) * phi.dot(u) * phi;
    }

    const auto start = std::chrono::steady_clock::now();
    std::string csv;
    if (opts.cli_path.empty()) {
      RunConfig cfg;
      cfg.matrix_source = "laplacian1d:32";
      cfg.s = 0.5;
      const RunResult res = execute(cfg, Method::trace_neumann);
      if (res.status != kExitOk) throw NonConvergence("trace_neumann did not converge", kInf);
      csv = res.csv;
    } else {
      const auto dir = std::filesystem::temp_directory_path() /
                       ("fracext_demo_" +
                        std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
      std::filesystem::create_directories(dir);
      const auto cfg_path = (dir / "demo.cfg").string();
      const auto out_path = (dir / "demo.csv").string();
      std::ofstream(cfg_path) << "matrix = laplacian1d:32\ns = 0.5\nu = ones\n";
      const std::string cmd = "\"" + opts.cli_path + "\" trace_neumann --config \"" + cfg_path +
                              "\" --out \"" + out_path + "\"";
      const int rc = std::system(cmd.c_str());
      std::ifstream in(out_path);
      std::ostringstream buf;
      buf << in.rdbuf();
      csv = buf.str();
      std::filesystem::remove_all(dir);
      if (rc != 0) throw NonConvergence("fracext exited with status " + std::to_string(rc), kInf);
    }
    const Vector value = parse_vector_csv(csv, n);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    d = "runtime " + fmt(secs) + " s";
    if (secs >= 10.0) return kInf;
    return rel(value, ref);
  });

  return r;
}

}  // namespace fracext
