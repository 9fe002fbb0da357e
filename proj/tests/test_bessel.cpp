#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fracext/bessel.hpp"
#include "fracext/extension.hpp"
#include "fracext/traces.hpp"
#include "test_support.hpp"

using namespace fracext;
using namespace fracext::testing;

namespace {

// I_{-v} = I_v + (2/pi) sin(v pi) K_v for v > 0.
double bessel_i_neg(double v, double z) {
  return std::cyl_bessel_i(v, z) + 2.0 / std::numbers::pi * std::sin(v * std::numbers::pi) *
                                       std::cyl_bessel_k(v, z);
}

}  // namespace

TEST_CASE("scalar series and boundary behaviour") {
  BesselParams p;
  p.a = 0.5;
  CHECK(phi(PhiKind::one, 0.0, 1.0, p) == Complex(1.0));
  const double y = 1e-4;
  CHECK(std::abs(phi(PhiKind::two, y, 1.0, p) / std::pow(y, 1.0 - p.a) - 1.0 / (1.0 - p.a)) <=
        1e-6 / (1.0 - p.a));
  for (auto kind : {PhiKind::one, PhiKind::two}) {
    const double lam = 2.0;
    const double yy = 1.0;
    const Complex res = phi(kind, yy, lam, p, 2) + p.a / yy * phi(kind, yy, lam, p, 1) -
                        lam * phi(kind, yy, lam, p);
    CHECK(std::abs(res) <= 1e-10);
  }
}

TEST_CASE("modified Bessel function forms") {
  for (double a : {-0.6, 0.0, 0.3, 0.5}) {
    BesselParams p;
    p.a = a;
    const double nu = (1.0 - a) / 2.0;
    for (double lam : {0.5, 3.0}) {
      for (double y : {0.2, 1.0, 4.0}) {
        const double z = std::sqrt(lam) * y;
        const double one = std::tgamma(1.0 - nu) * std::pow(z / 2.0, nu) * bessel_i_neg(nu, z);
        const double two = std::tgamma(nu) / 2.0 * std::pow(2.0 * y / std::sqrt(lam), nu) *
                           std::cyl_bessel_i(nu, z);
        CHECK(std::abs(phi(PhiKind::one, y, lam, p).real() - one) <= 1e-9 * std::abs(one));
        CHECK(std::abs(phi(PhiKind::two, y, lam, p).real() - two) <= 1e-9 * std::abs(two));
      }
    }
  }
}

TEST_CASE("series truncation is stable under a larger budget") {
  BesselParams p;
  p.a = 0.2;
  p.trunc_tol = 1e-14;
  BesselParams big = p;
  big.max_terms = 2 * p.max_terms;
  for (double x : {1.0, 50.0, 100.0}) {
    const double y = std::sqrt(x);
    for (auto kind : {PhiKind::one, PhiKind::two}) {
      const Complex v1 = phi(kind, y, 1.0, p);
      CHECK(std::abs(v1 - phi(kind, y, 1.0, big)) <= 1e-14 * std::abs(v1));
    }
  }
  BesselParams tiny = p;
  tiny.max_terms = 3;
  CHECK_THROWS_AS(phi(PhiKind::one, 10.0, 4.0, tiny), NonConvergence);
}

TEST_CASE("operator series") {
  BesselParams p;
  p.a = 0.5;
  const Vector u = vec({1.0, -2.0});
  const Matrix zero = Matrix::Zero(2, 2);
  CHECK(rel(phi_op(PhiKind::one, 0.7, zero, u, p), u) <= 1e-15);
  CHECK(rel(phi_op(PhiKind::two, 0.7, zero, u, p), u * (std::pow(0.7, 0.5) / 0.5)) <= 1e-15);

  const Matrix scalar = Matrix::Constant(1, 1, 2.5);
  for (auto kind : {PhiKind::one, PhiKind::two}) {
    const Vector v = phi_op(kind, 0.9, scalar, vec({1.0}), p);
    CHECK(std::abs(v(0) - phi(kind, 0.9, 2.5, p)) <= 1e-12 * std::abs(v(0)));
  }

  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = 4.0;
  const double y = 1e-3;
  const Vector w = std::pow(y, p.a) * phi_op(PhiKind::two, y, t, u, p, 1);
  CHECK(rel(w, u) <= 1e-4);

  // boundary-data matrix of (phi_1, phi_2) is the identity
  const double y0 = 1e-14;  // phi_2 vanishes only like y^{1-a}
  const double lam = 1.7;
  CHECK(std::abs(phi(PhiKind::one, y0, lam, p) - 1.0) <= 1e-6);
  CHECK(std::abs(std::pow(y0, p.a) * phi(PhiKind::one, y0, lam, p, 1)) <= 1e-6);
  CHECK(std::abs(phi(PhiKind::two, y0, lam, p)) <= 1e-6);
  CHECK(std::abs(std::pow(y0, p.a) * phi(PhiKind::two, y0, lam, p, 1) - 1.0) <= 1e-6);
}

TEST_CASE("particular solution") {
  BesselParams p;
  p.a = 0.3;
  Matrix t = Matrix::Zero(2, 2);
  t(0, 0) = 1.0;
  t(1, 1) = 2.0;
  const Vector w = vec({1.0, 0.5});
  auto g = [&](double s) { return Vector(std::exp(-s) * w); };
  auto zero = [&](double) { return Vector(Vector::Zero(2)); };
  CHECK(phi_particular(0.5, t, zero, p).norm() == 0.0);

  const double y = 0.5;
  const double h = 1e-3;
  auto phip = [&](double yy) { return phi_particular(yy, t, g, p); };
  const Vector d1 = (phip(y + h) - phip(y - h)) / (2 * h);
  const Vector d2 = (phip(y + h) - 2.0 * phip(y) + phip(y - h)) / (h * h);
  const Vector res = d2 + (p.a / y) * d1 - t * phip(y) - g(y);
  CHECK(res.norm() <= 1e-6);
  CHECK((phi_particular(y, t, g, p, {}, 1) - d1).norm() <= 1e-6);

  const double y0 = 1e-3;
  CHECK(phi_particular(y0, t, g, p).norm() <= 1e-4 * w.norm());
  CHECK((std::pow(y0, p.a) * phi_particular(y0, t, g, p, {}, 1)).norm() <= 1e-4 * w.norm());
}

TEST_CASE("initial value problem classification") {
  CHECK(ivp_classify(0.5, 0.5) == IvpVerdict::unique);
  CHECK(ivp_classify(0.5, 0.7) == IvpVerdict::non_unique);
  CHECK(ivp_classify(-1.0, -1.0) == IvpVerdict::unique);
  CHECK(ivp_classify(0.5, 0.2) == IvpVerdict::forced_data);
  CHECK(ivp_classify(-2.0, -2.0) == IvpVerdict::forced_data);
  CHECK_THROWS_AS(ivp_classify(1.0, 0.0), ValidationError);
}

TEST_CASE("ODE cross solve") {
  const Generator g = diag({-1.0});
  CHECK(ode_cross_solve(g, 0.0, vec({0.0}), vec({0.0}), 0.8).norm() == 0.0);
  const Vector v = ode_cross_solve(g, 0.0, vec({1.0}), vec({-1.0}), 0.8);
  CHECK(std::abs(v(0) - std::exp(-0.8)) <= 1e-9 * std::exp(-0.8));
  CHECK_THROWS_AS(ode_cross_solve(diag({-50.0}), 0.0, vec({1.0}), vec({1.0}), 2.0), ValidationError);

  // reconstruct U from (u, c_s (-L)^s u) and compare against subordination
  const Generator d = diag({-1.0, -4.0});
  const Vector u = vec({1.0, 1.0});
  const FracOrder s(0.4);
  const Vector v0 = trace_constants(s).c_s * spectral_frac_power(d, 0.4, u);
  for (double y : {0.05, 0.5, 1.0, 1.5}) {
    CHECK(rel(ode_cross_solve(d, 1.0 - 2 * 0.4, u, v0, y), extend_subordination(d, s, u, y)) <= 1e-6);
  }
}
