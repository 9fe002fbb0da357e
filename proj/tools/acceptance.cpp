#include <chrono>
#include <cstdio>

#include "fracext/verify.hpp"

// Usage: fracext_acceptance [path-to-fracext]
int main(int argc, char** argv) {
  fracext::AcceptanceOptions opts;
  if (argc > 1) opts.cli_path = argv[1];
  const auto start = std::chrono::steady_clock::now();
  const fracext::VerifyReport report = fracext::acceptance_checks(opts);
  for (const auto& c : report.checks) {
    std::printf("criterion %2d %s  %s: %.3e (tol %.1e) %s\n", c.criterion, c.pass ? "PASS" : "FAIL",
                c.name.c_str(), c.value, c.tol, c.detail.c_str());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("total %.1f s\n", secs);
  return report.all_pass() ? 0 : 1;
}
