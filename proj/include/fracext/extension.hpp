#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracext/fracpow.hpp"
#include "fracext/generator.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

/// Exact y-derivatives of the Gaussian e^{beta y^2}:
/// d^m/dy^m e^{beta y^2} = e^{beta y^2} sum c * y^p * beta^q.
class GaussianDerivative {
 public:
  struct Term {
    double coef;
    int p;  // power of y
    int q;  // power of beta
  };

  explicit GaussianDerivative(int m);

  int order() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// sum c y^p beta^q, without the exponential factor.
  Complex polynomial(double y, Complex beta) const;

 private:
  int m_;
  std::vector<Term> terms_;
};

/// d^m/dy^m (y^{2s} e^{-y^2/(4t)}) = sum_b coef_b y^{2s-m+2b} t^{-b} e^{-y^2/(4t)}.
/// The table is built by the product rule on (y-exponent, t-power) pairs.
class KernelDerivative {
 public:
  struct Term {
    double coef;
    double a;  // power of y
    int b;     // power of 1/t
  };

  KernelDerivative(double s, int m);

  double s() const { return s_; }
  int order() const { return m_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// The m-th derivative at (y, t), including the Gaussian factor.
  double evaluate(double y, double t) const;

 private:
  double s_;
  int m_;
  std::vector<Term> terms_;
};

/// Linear differential operator sum_{p,q} c_{p,q} y^p d^q/dy^q with integer
/// p (possibly negative). Used to expand compositions of (a/y) d/dy + d^2/dy^2
/// and (2/y) d/dy into plain derivatives.
class DiffOp {
 public:
  DiffOp() = default;

  static DiffOp identity();
  /// (a/y) d/dy + d^2/dy^2.
  static DiffOp bessel(double a);
  /// (2/y) d/dy.
  static DiffOp radial();
  /// d/dy.
  static DiffOp derivative();

  /// this o other.
  DiffOp compose(const DiffOp& other) const;
  DiffOp pow(int k) const;
  DiffOp operator+(const DiffOp& other) const;
  DiffOp operator-(const DiffOp& other) const;
  DiffOp scaled(double c) const;

  int max_derivative() const;
  const std::map<std::pair<int, int>, double>& terms() const { return terms_; }

  /// sum c y^p derivs[q]; derivs[q] is the q-th y-derivative at y.
  Vector apply(double y, const std::vector<Vector>& derivs) const;

 private:
  void add(int p, int q, double c);
  std::map<std::pair<int, int>, double> terms_;  // (p, q) -> c
};

/// F_N(r) = e^{-r} - sum_{k<=N} (-r)^k / k!; N = -1 gives e^{-r}.
double helper_F(int n, double r);

/// S_{n,N}(r) = sum_{k=n}^{N} (-1)^{k-n} r^{k-n} / (k-n)! * Gamma(s-k)/Gamma(s) (-L)^k u.
Vector helper_S(const Generator& g, const Vector& u, double s, int n, int big_n, double r);

/// U(y) = Gamma(s)^{-1} \int_0^\infty e^{-r} r^{s-1} e^{(y^2/(4r)) L} u dr.
Vector extend_subordination(const Generator& g, const FracOrder& s, const Vector& u, double y,
                            const QuadratureSpec& q = {});

/// U(y) from the Taylor part in L^k u plus the remainder integral against
/// f = (-L)^s u (taken from the spectral evaluation). y = 0 returns u.
/// The remainder integral has no e^{-r} weight and always uses the
/// double-exponential rule.
Vector extend_explicit(const Generator& g, const FracOrder& s, const Vector& u, double y,
                       const QuadratureSpec& q = {});

/// Highest derivative order y_derivative accepts for a given s.
int max_derivative_order(const FracOrder& s);

/// d^m U / dy^m, differentiating the Gaussian factor under the r-integral.
Vector y_derivative(const Generator& g, const FracOrder& s, const Vector& u, int m, double y,
                    const QuadratureSpec& q = {});

/// Derivatives of orders 0..m at one y.
std::vector<Vector> y_derivatives(const Generator& g, const FracOrder& s, const Vector& u, int m,
                                  double y, const QuadratureSpec& q = {});

/// d^m U / dy^m through the t-form kernel table. Accurate only for moderate
/// y: the terms carry y^{-m} and cancel as y -> 0.
Vector y_derivative_kernel(const Generator& g, const FracOrder& s, const Vector& u, int m,
                           double y, const QuadratureSpec& q = {});

enum class RadialMode { from_u, from_f };

std::string to_string(RadialMode mode);
RadialMode radial_mode_from_string(const std::string& name);

/// (2/y d/dy)^m U(y), 0 <= m <= [s]+1.
/// from_u: Gamma(s)^{-1} \int r^{s-m-1} e^{-r} L^m e^{(y^2/(4r))L} u dr.
/// from_f: the S/F representation driven by f = (-L)^s u.
Vector radial_power(const Generator& g, const FracOrder& s, const Vector& u, int m, double y,
                    const QuadratureSpec& q = {}, RadialMode mode = RadialMode::from_u);

/// (2/y d/dy)^m U(y) for any m >= 0 from the r-integral (no order cap).
Vector radial_power_any(const Generator& g, double s, const Vector& u, int m, double y,
                        const QuadratureSpec& q = {});

/// (4^s Gamma(s))^{-1} \int_0^\infty y^{2s} e^{-y^2/(4t)} t^{-1-s} dt (equals 1).
double normalization_check(const FracOrder& s, double y, const QuadratureSpec& q = {});

enum class ResidualOrder { second, higher };

/// second: ||LU + ((1-2s)/y)U' + U''|| / ||u||.
/// higher: ||(L + ((1-2 sigma)/y) d/dy + d^2/dy^2)^{[s]+1} U|| / ||u||.
double pde_residual(const Generator& g, const FracOrder& s, const Vector& u, double y,
                    const QuadratureSpec& q = {}, ResidualOrder order = ResidualOrder::second);

/// (L + (a/y) d/dy + d^2/dy^2)^k applied through exact derivatives.
/// derivs must hold orders 0..2k at y.
Vector apply_bessel_power(const Generator& g, double a, int k, double y,
                          const std::vector<Vector>& derivs);

struct ExtensionProfile {
  std::vector<double> ygrid;
  std::vector<Vector> values;
  /// derivs[i][m] = d^m U / dy^m at ygrid[i], m = 0..2([s]+1).
  std::vector<std::vector<Vector>> derivs;
  FracOrder order_s{0.5};
  Vector source_u;
  Scheme scheme = Scheme::tanh_sinh_adaptive;

  /// Header "# s=...,dim=...,scheme=...", then y and real/imag columns of U
  /// and each derivative order.
  std::string to_csv() const;
};

/// Evaluates U and its derivatives on a strictly increasing grid; the grid
/// points are processed in parallel.
ExtensionProfile build_profile(const Generator& g, const FracOrder& s, const Vector& u,
                               const std::vector<double>& ygrid, const QuadratureSpec& q = {});

}  // namespace fracext
