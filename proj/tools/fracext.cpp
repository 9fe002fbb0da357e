#include <CLI11.hpp>

#include <iostream>

#include "fracext/config.hpp"
#include "fracext/run.hpp"

namespace {

constexpr const char* kOutputHelp = R"(Output (CSV):
  spectral, balakrishnan, bbw, trace_neumann, trace_incremental:
    '# method=..,s=..,dim=..,matrix=..[,converged=..][,oracle_rel_err=..]'
    then columns index,re,im of the computed (-L)^s u.
    bbw and trace_* also write <out>.table.csv with columns
    step,column,re(v_i),im(v_i)...,diff (one row per extrapolation entry).
  extend:
    '# s=..,dim=..,scheme=..' then y, re/im of U_i, then re/im of each
    y-derivative order d1U_i, d2U_i, ... on the ygrid (increasing).
  verify:
    criterion,check,value,tol,pass,detail (criterion 0 = invariant on the
    configured generator, 1..10 = acceptance suite).

Config keys (key = value, '#' comments):
  matrix (builtin diag-demo | laplacian1d:n | random:n:seed, or a file),
  s, method, u (ones | basis:i | random[:seed] | file), seed, output,
  ygrid_start, ygrid_factor, ygrid_count, ygrid_adapt,
  quadrature (tanh_sinh_adaptive | gauss_laguerre_generalized), nodes, alpha,
  tol, bbw_k, bbw_eps0, bbw_levels, bbw_tol.

Exit status: 0 success, 1 verify found failing checks, 2 invalid input,
3 numerical non-convergence. FRACEXT_THREADS caps worker threads.)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional powers of matrix generators through extension problems"};
  app.footer(kOutputHelp);
  std::string method_name;
  std::string config_path;
  std::string out_path;
  bool verbose = false;
  app.add_option("method", method_name,
                 "spectral | balakrishnan | bbw | trace_neumann | trace_incremental | extend | "
                 "verify")
      ->required();
  app.add_option("--config", config_path, "Configuration file")->required();
  app.add_option("--out", out_path, "Output CSV path (default: config 'output' or stdout)");
  app.add_flag("--verbose", verbose, "Print a summary to stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return fracext::kExitValidation;
  }

  try {
    const fracext::Method method = fracext::method_from_string(method_name);
    fracext::RunConfig cfg = fracext::load_config(config_path);
    if (cfg.method && *cfg.method != method) {
      throw fracext::ValidationError("config selects method '" + fracext::to_string(*cfg.method) +
                                     "' but '" + method_name + "' was requested");
    }
    if (!out_path.empty()) cfg.output_path = out_path;
    return fracext::run(cfg, method, std::cout, std::cerr, verbose);
  } catch (const fracext::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return fracext::kExitValidation;
  }
}
