#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "fracext/config.hpp"
#include "fracext/io.hpp"
#include "fracext/run.hpp"
#include "fracext/verify.hpp"

using namespace fracext;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text, "cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_config(
      "# demo\n"
      "matrix = random:6:3   # builtin\n"
      "s = 1.5\n"
      "method = trace_incremental\n"
      "u = basis:2\n"
      "ygrid_start = 0.2\n"
      "ygrid_factor = 0.6\n"
      "ygrid_count = 9\n"
      "ygrid_adapt = false\n"
      "quadrature = tanh_sinh_adaptive\n"
      "tol = 1e-12\n"
      "seed = 17\n"
      "bbw_k = 3\n");
  CHECK(cfg.matrix_source == "random:6:3");
  CHECK(cfg.s == 1.5);
  CHECK(cfg.method == Method::trace_incremental);
  CHECK(cfg.u_source == "basis:2");
  CHECK(cfg.ygrid.start == 0.2);
  CHECK(cfg.ygrid.factor == 0.6);
  CHECK(cfg.ygrid.count == 9);
  CHECK_FALSE(cfg.ygrid.adapt_to_spectrum);
  CHECK(cfg.quadrature.tol == 1e-12);
  CHECK(cfg.seed == 17u);
  CHECK(cfg.bbw_k == 3);

  CHECK(error_of("matrix = diag-demo\n\n") == "cfg:2: missing required key 's'");
  CHECK(error_of("matrix = diag-demo\ns = 2\n") == "cfg:2: fractional order must be noninteger");
  CHECK(error_of("s = 0.5\nmatrix diag-demo\n") == "cfg:2: expected 'key = value'");
  CHECK(error_of("s = 0.5\ns = 0.7\n").rfind("cfg:2: duplicate key 's'", 0) == 0);
  CHECK(error_of("s = abc\n") == "cfg:1: 's' needs a number, got 'abc'");
  CHECK(error_of("s = 0.5\nspeed = 2\n") == "cfg:2: unknown key 'speed'");
  CHECK(error_of("matrix = diag-demo\ns = 0.5\nygrid_count = 2.5\n") ==
        "cfg:3: 'ygrid_count' needs an integer, got '2.5'");
  CHECK(error_of("matrix = diag-demo\ns = 0.5\nygrid_factor = 1.5\n") ==
        "cfg: ygrid factor must lie in (0,1)");
  CHECK(error_of("matrix = diag-demo\ns = 0.5\nmethod = fourier\n") ==
        "cfg:3: unknown method 'fourier'");
}

TEST_CASE("method dispatch") {
  RunConfig cfg;
  cfg.matrix_source = "diag-demo";
  cfg.s = 0.5;
  for (Method m : {Method::spectral, Method::balakrishnan, Method::bbw, Method::trace_neumann,
                   Method::trace_incremental}) {
    const RunResult r = execute(cfg, m);
    CHECK(r.status == kExitOk);
    CHECK(r.csv.find("# method=" + to_string(m)) == 0);
    std::istringstream in(r.csv);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) rows += std::isdigit(static_cast<unsigned char>(line[0])) ? 1 : 0;
    CHECK(rows == 3);
  }
  const RunResult ext = execute(cfg, Method::extend);
  CHECK(ext.csv.rfind("# s=0.5", 0) == 0);

  cfg.s = 2.5;
  CHECK_THROWS_AS(execute(cfg, Method::trace_incremental), ValidationError);
  cfg.s = 0.5;
  cfg.matrix_source = "no/such/file.txt";
  CHECK_THROWS_AS(execute(cfg, Method::spectral), ValidationError);
}

TEST_CASE("exit codes and output files") {
  const auto dir = std::filesystem::temp_directory_path() / "fracext_cli_test";
  std::filesystem::create_directories(dir);
  RunConfig cfg;
  cfg.matrix_source = "diag-demo";
  cfg.s = 0.5;
  cfg.output_path = (dir / "trace.csv").string();
  std::ostringstream out, log;
  CHECK(run(cfg, Method::trace_neumann, out, log) == kExitOk);
  CHECK(out.str().empty());
  CHECK(read_file(cfg.output_path).find("index,re,im") != std::string::npos);
  CHECK(read_file(cfg.output_path + ".table.csv").find("step,column") != std::string::npos);

  // two BBW levels cannot certify a 1e-12 Cauchy tolerance
  cfg.bbw.levels = 2;
  cfg.bbw.tol = 1e-12;
  CHECK(run(cfg, Method::bbw, out, log) == kExitNonConvergence);

  cfg.bbw = {};
  cfg.u_source = "basis:9";
  CHECK(run(cfg, Method::spectral, out, log) == kExitValidation);
  CHECK(log.str().find("error:") != std::string::npos);

  cfg.u_source = "ones";
  cfg.output_path.clear();
  std::ostringstream direct;
  CHECK(run(cfg, Method::spectral, direct, log) == kExitOk);
  CHECK(direct.str().find("index,re,im") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invariants on the demo generator") {
  const Generator g = builtin_matrix("diag-demo");
  for (double s : {0.5, 2.5}) {
    const VerifyReport r = invariant_checks(g, FracOrder(s), Vector::Ones(3));
    for (const auto& c : r.checks) {
      INFO("s=", s, " ", c.name, " value=", c.value, " ", c.detail);
      CHECK(c.pass);
    }
    CHECK(r.to_csv().rfind("criterion,check,value,tol,pass,detail\n", 0) == 0);
  }
}
