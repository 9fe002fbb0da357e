#pragma once

#include <string>
#include <vector>

#include "fracext/fracpow.hpp"
#include "fracext/generator.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

struct Check {
  /// Acceptance criterion number, or 0 for a per-generator invariant.
  int criterion = 0;
  std::string name;
  double value = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

struct VerifyReport {
  std::vector<Check> checks;

  bool all_pass() const;
  /// Columns: criterion,check,value,tol,pass,detail.
  std::string to_csv() const;
  void append(const VerifyReport& other);
};

/// Module invariants evaluated on one generator, order and source vector.
VerifyReport invariant_checks(const Generator& g, const FracOrder& s, const Vector& u,
                              const QuadratureSpec& q = {});

struct AcceptanceOptions {
  /// fracext executable used for the demo criterion. Empty runs the same
  /// configuration in-process.
  std::string cli_path;
};

/// The fixed acceptance suite, one check per criterion 1..10.
VerifyReport acceptance_checks(const AcceptanceOptions& opts = {});

}  // namespace fracext
