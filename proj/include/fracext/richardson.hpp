#pragma once

#include <span>
#include <vector>

#include "fracext/types.hpp"

namespace fracext {

/// Richardson table for a limit y -> 0 sampled on a geometric sequence
/// y_j = y_0 q^j, assuming an error expansion sum_i c_i y^{p_i} with known
/// exponents p_0 < p_1 < ...
struct ExtrapolationTable {
  std::vector<double> steps;
  std::vector<double> exponents;
  /// table[j][k]: k-th elimination using samples j-k..j.
  std::vector<std::vector<Vector>> table;
  Vector best;
  int best_row = 0;
  int best_col = 0;
  /// Error estimate attached to `best`.
  double best_diff = 0.0;
  bool converged = false;
};

/// Builds the table and picks the entry with the smallest error estimate,
/// max(|T[j][k] - T[j-1][k]|, |T[j][k] - T[j][k-1]|).
/// `converged` is best_diff <= tol * max(|best|, scale).
ExtrapolationTable richardson(std::span<const double> steps, std::vector<Vector> values,
                              std::span<const double> exponents, double tol, double scale);

/// Positive exponents of the small-y expansion of y^shift (2/y d/dy)^j U(y),
/// where U has terms y^{2k} and y^{2s+2k} (k >= 0). Exponents that are not
/// positive are dropped: they belong to the limit itself or cancel by
/// construction in the quotients that use this. Sorted, de-duplicated, at
/// most `count` entries.
std::vector<double> expansion_exponents(double s, int j, double shift, int count);

}  // namespace fracext
