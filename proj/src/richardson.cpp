#include "fracext/richardson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fracext {

ExtrapolationTable richardson(std::span<const double> steps, std::vector<Vector> values,
                              std::span<const double> exponents, double tol, double scale) {
  require(steps.size() == values.size() && !steps.empty(),
          "extrapolation needs one value per step");
  for (std::size_t j = 1; j < steps.size(); ++j) {
    require(steps[j] < steps[j - 1] && steps[j] > 0.0,
            "extrapolation steps must be positive and decreasing");
  }
  ExtrapolationTable out;
  out.steps.assign(steps.begin(), steps.end());
  out.exponents.assign(exponents.begin(), exponents.end());

  const std::size_t n = steps.size();
  out.table.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t cols = std::min(j, exponents.size()) + 1;
    out.table[j].resize(cols);
    out.table[j][0] = std::move(values[j]);
    for (std::size_t k = 1; k < cols; ++k) {
      const double ratio = std::pow(steps[j] / steps[j - 1], exponents[k - 1]);
      out.table[j][k] = (out.table[j][k - 1] - ratio * out.table[j - 1][k - 1]) / (1.0 - ratio);
    }
  }

  out.best = out.table[n - 1][0];
  out.best_row = static_cast<int>(n - 1);
  out.best_diff = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t k = 0; k < out.table[j].size(); ++k) {
      if (k >= out.table[j - 1].size()) continue;
      double diff = (out.table[j][k] - out.table[j - 1][k]).norm();
      if (k > 0) diff = std::max(diff, (out.table[j][k] - out.table[j][k - 1]).norm());
      if (diff < out.best_diff) {
        out.best_diff = diff;
        out.best = out.table[j][k];
        out.best_row = static_cast<int>(j);
        out.best_col = static_cast<int>(k);
      }
    }
  }
  if (n == 1) out.best_diff = 0.0;
  out.converged = out.best_diff <= tol * std::max(out.best.norm(), scale);
  return out;
}

std::vector<double> expansion_exponents(double s, int j, double shift, int count) {
  std::vector<double> raw;
  for (int k = 0; k < count + j + 2; ++k) {
    if (k >= j) raw.push_back(2.0 * (k - j) + shift);
    raw.push_back(2.0 * (s - j) + 2.0 * k + shift);
  }
  std::vector<double> out;
  std::sort(raw.begin(), raw.end());
  for (double e : raw) {
    if (e <= 1e-12) continue;
    if (!out.empty() && std::abs(out.back() - e) < 1e-12) continue;
    out.push_back(e);
  }
  if (static_cast<int>(out.size()) > count) out.resize(count);
  return out;
}

}  // namespace fracext
