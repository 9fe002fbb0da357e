#pragma once

#include <iosfwd>
#include <string>

#include "fracext/config.hpp"
#include "fracext/generator.hpp"

namespace fracext {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNonConvergence = 3;

/// Builtin name or matrix file path.
Generator load_generator(const std::string& source);

struct RunResult {
  std::string csv;
  /// Extrapolation table for the limit-based methods, else empty.
  std::string table_csv;
  /// One-line human summary.
  std::string summary;
  /// kExitOk, kExitCheckFailed (verify) or kExitNonConvergence (a limit
  /// that did not settle; the CSV is still produced).
  int status = kExitOk;
};

/// Runs one method. Throws ValidationError or NonConvergence.
RunResult execute(const RunConfig& cfg, Method method);

/// execute() plus output handling and the exit-code mapping. The CSV goes
/// to cfg.output_path (atomically, with the table next to it as
/// <output>.table.csv) or to `out` when no path is set.
int run(const RunConfig& cfg, Method method, std::ostream& out, std::ostream& log,
        bool verbose = false);

}  // namespace fracext
