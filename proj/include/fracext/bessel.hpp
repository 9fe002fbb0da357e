#pragma once

#include <functional>
#include <string>

#include "fracext/generator.hpp"
#include "fracext/quadrature.hpp"

namespace fracext {

/// Frobenius solutions of phi'' + (a/y) phi' = lambda phi around y = 0
/// (indicial roots 0 and 1 - a):
///   one: phi(0) = 1,         y^a phi'(y) -> 0
///   two: phi ~ y^{1-a}/(1-a), y^a phi'(y) -> 1
enum class PhiKind { one, two };

struct BesselParams {
  double a = 0.0;
  /// Stop once a term falls below trunc_tol times the partial sum (and the
  /// term ratio has dropped below 1/2).
  double trunc_tol = 1e-17;
  int max_terms = 400;

  void validate() const;
};

/// d^deriv/dy^deriv of phi_kind(y, lambda), deriv in {0, 1, 2}, by
/// term-by-term differentiation of the series.
Complex phi(PhiKind kind, double y, Complex lambda, const BesselParams& p, int deriv = 0);

/// Same series with lambda^k u replaced by T^k u.
Vector phi_op(PhiKind kind, double y, const Matrix& t, const Vector& u, const BesselParams& p,
              int deriv = 0);

/// Variation-of-parameters solution of phi'' + (a/y) phi' = T phi + g with
/// zero data at y = 0:
/// \int_0^y (phi_2(y,T) phi_1(t,T) - phi_1(y,T) phi_2(t,T)) g(t) t^a dt.
/// deriv = 1 returns its y-derivative.
Vector phi_particular(double y, const Matrix& t, const std::function<Vector(double)>& g,
                      const BesselParams& p, const QuadratureSpec& q = {}, int deriv = 0);

enum class IvpVerdict { unique, forced_data, non_unique };

std::string to_string(IvpVerdict v);

/// Whether phi'' + (a/y)phi' = lambda phi with phi(0) = alpha and
/// y^b phi'(y) -> beta is uniquely solvable for all data (a < 1).
IvpVerdict ivp_classify(double a, double b);

/// phi_1(y,T) u0 + phi_2(y,T) v0 with T = -L: the solution of
/// LU + (a/y) U' + U'' = 0, U(0) = u0, y^a U'(y) -> v0. Requires
/// -1 < a < 1 and ||L|| y^2 <= 100.
Vector ode_cross_solve(const Generator& g, double a, const Vector& u0, const Vector& v0,
                       double y, const BesselParams& p = {});

}  // namespace fracext
