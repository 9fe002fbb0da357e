#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracext/richardson.hpp"
#include "fracext/types.hpp"

namespace fracext {

enum class TraceMethod { neumann_general, incremental_s01, incremental_s12, bbw };

std::string to_string(TraceMethod method);

/// An extrapolated estimate of (-L)^s u together with the data it came from.
struct TraceEstimate {
  Vector value;
  TraceMethod method = TraceMethod::neumann_general;
  /// Sampling parameters (y for traces, epsilon for the semigroup limit).
  std::vector<double> y_sequence;
  ExtrapolationTable extrapolant_table;
  bool converged = false;
  /// ||value - (-L)^s u|| / ||(-L)^s u|| against the spectral oracle.
  std::optional<double> oracle_err;

  /// One row per table entry: step, column, real/imag parts, and the
  /// difference to the previous row in the same column.
  std::string to_csv() const;
};

/// Fraction-of-norm error with a zero-safe denominator.
double relative_error(const Vector& value, const Vector& reference);

}  // namespace fracext
