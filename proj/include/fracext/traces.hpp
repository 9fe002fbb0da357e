#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracext/estimate.hpp"
#include "fracext/fracpow.hpp"
#include "fracext/generator.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

struct Constants {
  /// (-1)^{[s]+1} Gamma([s]+1-s) / (4^{s-[s]-1/2} Gamma(s))
  double c_s;
  /// (4^{1-s} - 1) Gamma(1-s) / Gamma(1+s), only for 1 < s < 2.
  std::optional<double> d_s;
};

Constants trace_constants(const FracOrder& s);

/// d_s; throws ValidationError outside 1 < s < 2.
double d_constant(const FracOrder& s);

/// Geometric sampling y_j = start * factor^j, j < count. With
/// adapt_to_spectrum the start is lowered to at most kSpectralScale/sqrt(rho(L))
/// so that the first samples already see the small-y regime of the
/// fastest-decaying eigencomponent.
struct YSchedule {
  static constexpr double kSpectralScale = 1.25;

  double start = 0.4;
  double factor = 0.5;
  int count = 11;
  bool adapt_to_spectrum = true;

  void validate() const;
  std::vector<double> points(const Generator& g) const;
};

struct TraceOptions {
  /// Relative Cauchy tolerance of the extrapolated sequence.
  double tol = 1e-7;
  /// Attach the spectral-oracle error to the estimate.
  bool with_oracle = true;
};

/// (-L)^s u from lim y^{1-2 sigma} d/dy (2/y d/dy)^{[s]} U(y) = c_s (-L)^s u.
TraceEstimate trace_neumann(const Generator& g, const FracOrder& s, const Vector& u,
                            const QuadratureSpec& q = {}, const YSchedule& ys = {},
                            const TraceOptions& opts = {});

/// (-L)^s u from incremental quotients: (2s/c_s)(U(y)-u)/y^{2s} for 0<s<1,
/// (U(2y) - 4U(y) + 3u)/(d_s y^{2s}) for 1<s<2.
TraceEstimate trace_incremental(const Generator& g, const FracOrder& s, const Vector& u,
                                const QuadratureSpec& q = {}, const YSchedule& ys = {},
                                const TraceOptions& opts = {});

/// One line of the initial-condition table.
struct ConditionLine {
  std::string form;  // "radial" or "operator"
  std::string kind;  // "value", "weighted_derivative", "neumann", "factor"
  int m = 0;
  Vector limit;
  Vector expected;
  double error = 0.0;  // ||limit - expected|| (relative for "factor")
  double tol = 0.0;
  bool pass = false;
};

struct InitialConditionReport {
  std::vector<ConditionLine> lines;
  bool all_pass() const;
  std::string to_csv() const;
};

/// Extrapolated boundary limits of U at y = 0, checked against
///   (2/y d/dy)^m U -> Gamma(s-m)/Gamma(s) L^m u               (m <= [s])
///   y^{1-2 sigma} d/dy (2/y d/dy)^m U -> 0                    (m < [s])
///   y^{1-2 sigma} d/dy (2/y d/dy)^{[s]} U -> c_s (-L)^s u
/// and the same limits for the operator form with
/// Delta = L + ((1-2 sigma)/y) d/dy + d^2/dy^2 in place of 2/y d/dy, whose
/// limits carry the extra factor [s]!/([s]-m)!. The "factor" line compares
/// the two Neumann limits directly.
InitialConditionReport initial_condition_suite(const Generator& g, const FracOrder& s,
                                               const Vector& u, const QuadratureSpec& q = {},
                                               const YSchedule& ys = {}, double tol = 1e-4,
                                               double factor_tol = 1e-5);

struct MembershipResult {
  bool member = false;
  TraceEstimate estimate;
};

/// Numerical domain verdict: whether the Neumann trace sequence converges.
MembershipResult domain_membership(const Generator& g, const FracOrder& s, const Vector& u,
                                   const QuadratureSpec& q = {}, const YSchedule& ys = {},
                                   const TraceOptions& opts = {});

}  // namespace fracext
