#include "fracext/run.hpp"

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "fracext/extension.hpp"
#include "fracext/fracpow.hpp"
#include "fracext/io.hpp"
#include "fracext/traces.hpp"
#include "fracext/verify.hpp"

namespace fracext {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string vector_csv(const std::string& header, const Vector& v) {
  std::ostringstream out;
  out << header << "\nindex,re,im\n";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out << i << "," << fmt(v(i).real()) << "," << fmt(v(i).imag()) << "\n";
  }
  return out.str();
}

std::string header(Method m, const RunConfig& cfg, int dim) {
  std::ostringstream out;
  out << "# method=" << to_string(m) << ",s=" << fmt(cfg.s) << ",dim=" << dim
      << ",matrix=" << cfg.matrix_source;
  return out.str();
}

RunResult from_estimate(Method m, const RunConfig& cfg, const TraceEstimate& est) {
  RunResult r;
  std::string h = header(m, cfg, static_cast<int>(est.value.size()));
  h += ",converged=" + std::string(est.converged ? "true" : "false");
  if (est.oracle_err) h += ",oracle_rel_err=" + fmt(*est.oracle_err);
  r.csv = vector_csv(h, est.value);
  r.table_csv = est.to_csv();
  r.summary = to_string(m) + ": converged=" + (est.converged ? "true" : "false") +
              (est.oracle_err ? ", oracle rel err " + fmt(*est.oracle_err) : "");
  r.status = est.converged ? kExitOk : kExitNonConvergence;
  return r;
}

}  // namespace

Generator load_generator(const std::string& source) {
  if (is_builtin_matrix(source)) return builtin_matrix(source);
  return Generator(load_matrix(source));
}

RunResult execute(const RunConfig& cfg, Method method) {
  cfg.validate();
  const Generator g = load_generator(cfg.matrix_source);
  const std::string usrc =
      cfg.u_source == "random" ? "random:" + std::to_string(cfg.seed) : cfg.u_source;
  const Vector u = vector_source(usrc, g.dim());
  const FracOrder s(cfg.s);
  const QuadratureSpec& q = cfg.quadrature;
  const Vector oracle = spectral_frac_power(g, cfg.s, u);

  auto plain = [&](const Vector& v) {
    RunResult r;
    const double err = relative_error(v, oracle);
    r.csv = vector_csv(header(method, cfg, g.dim()) + ",oracle_rel_err=" + fmt(err), v);
    r.summary = to_string(method) + ": oracle rel err " + fmt(err);
    return r;
  };

  switch (method) {
    case Method::spectral:
      return plain(oracle);
    case Method::balakrishnan:
      return plain(balakrishnan_general(g, s, u, q));
    case Method::bbw: {
      const int k = cfg.bbw_k > 0 ? cfg.bbw_k : s.n() + 1;
      return from_estimate(method, cfg, bbw_frac_power_detailed(g, s, k, u, q, cfg.bbw));
    }
    case Method::trace_neumann:
      return from_estimate(method, cfg, trace_neumann(g, s, u, q, cfg.ygrid));
    case Method::trace_incremental:
      return from_estimate(method, cfg, trace_incremental(g, s, u, q, cfg.ygrid));
    case Method::extend: {
      auto ys = cfg.ygrid.points(g);
      std::reverse(ys.begin(), ys.end());
      RunResult r;
      r.csv = build_profile(g, s, u, ys, q).to_csv();
      r.summary = "extend: " + std::to_string(ys.size()) + " grid points";
      return r;
    }
    case Method::verify: {
      VerifyReport report = invariant_checks(g, s, u, q);
      report.append(acceptance_checks());
      RunResult r;
      r.csv = report.to_csv();
      int failed = 0;
      for (const auto& c : report.checks) failed += c.pass ? 0 : 1;
      r.summary = "verify: " + std::to_string(report.checks.size() - failed) + "/" +
                  std::to_string(report.checks.size()) + " checks passed";
      r.status = failed == 0 ? kExitOk : kExitCheckFailed;
      return r;
    }
  }
  throw ValidationError("unhandled method");
}

int run(const RunConfig& cfg, Method method, std::ostream& out, std::ostream& log,
        bool verbose) {
  try {
    const RunResult r = execute(cfg, method);
    if (cfg.output_path.empty()) {
      out << r.csv;
    } else {
      write_file_atomic(cfg.output_path, r.csv);
      if (!r.table_csv.empty()) write_file_atomic(cfg.output_path + ".table.csv", r.table_csv);
    }
    if (verbose) {
      log << r.summary << "\n";
      if (method == Method::verify && !cfg.output_path.empty()) log << r.csv;
    }
    if (r.status == kExitNonConvergence) log << "error: limit did not converge\n";
    if (r.status == kExitCheckFailed) log << r.summary << "\n";
    return r.status;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NonConvergence& e) {
    log << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  }
}

}  // namespace fracext
