#pragma once

#include "fracext/estimate.hpp"
#include "fracext/generator.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

/// Noninteger order s > 0 split as s = n + sigma with n = floor(s).
class FracOrder {
 public:
  explicit FracOrder(double s);

  double s() const { return s_; }
  int n() const { return n_; }
  double sigma() const { return sigma_; }

 private:
  double s_;
  int n_;
  double sigma_;
};

/// (eps I - L)^{-alpha} u = Gamma(alpha)^{-1} \int_0^\infty e^{-eps t} e^{tL} u t^{alpha-1} dt.
///
/// With the Gauss-Laguerre scheme the integral is rescaled so that the
/// weight t^{alpha-1} e^{-t} matches the middle of the shifted spectrum; the
/// double-exponential scheme integrates the t-form directly.
Vector resolvent_frac_power(const Generator& g, double eps, double alpha, const Vector& u,
                            const QuadratureSpec& q = QuadratureSpec::laguerre());

/// Balakrishnan's integral for 0 < s < 1:
/// (sin(s pi)/pi) \int_0^\infty mu^{s-1} (mu I + A)^{-1} A u dmu, A = -L.
Vector balakrishnan(const Generator& g, const FracOrder& s, const Vector& u,
                    const QuadratureSpec& q = {});

/// A^s u = J^{sigma} A^n u for any noninteger s.
Vector balakrishnan_general(const Generator& g, const FracOrder& s, const Vector& u,
                            const QuadratureSpec& q = {});

/// Second Balakrishnan representation for 0 < s < 2 (subtracted kernel plus
/// sin(s pi / 2) A u). Used as an internal cross-check of the shifted path.
Vector balakrishnan_subtracted(const Generator& g, double s, const Vector& u,
                               const QuadratureSpec& q = {});

/// c(s, k) = \int_0^\infty (e^{-t} - 1)^k t^{-1-s} dt by tanh-sinh on [0,1]
/// and on the mapped tail. Cross-checked against c_constant_expsum; throws
/// NonConvergence if the two disagree by more than 1e-8 (relative).
double c_constant(const FracOrder& s, int k);

/// Same constant from the binomial expansion of (e^{-t} - 1)^k: the sum of
/// binomially weighted j^s times one regularized integral
/// \int t^{-1-s} F_{[s]}(t) dt, evaluated by exp-sinh.
double c_constant_expsum(const FracOrder& s, int k);

/// Direct tanh-sinh evaluation of c(s, k).
double c_constant_direct(const FracOrder& s, int k);

struct BbwOptions {
  double eps0 = 0.1;
  int levels = 13;
  /// Cauchy tolerance of the extrapolated sequence (relative).
  double tol = 1e-6;
};

/// Limit of c(s,k)^{-1} \int_eps^\infty (e^{tL} - I)^k u t^{-1-s} dt as eps -> 0,
/// sampled at eps_j = eps0 2^{-j} and Richardson-extrapolated with the
/// exponents k - s + i of the truncation error.
TraceEstimate bbw_frac_power_detailed(const Generator& g, const FracOrder& s, int k,
                                      const Vector& u, const QuadratureSpec& q = {},
                                      const BbwOptions& opts = {});

/// Value of bbw_frac_power_detailed; throws NonConvergence when the
/// extrapolated sequence is not Cauchy within opts.tol.
Vector bbw_frac_power(const Generator& g, const FracOrder& s, int k, const Vector& u,
                      const QuadratureSpec& q = {}, const BbwOptions& opts = {});

}  // namespace fracext
