#include <cmath>
#include <numbers>

#include <doctest.h>

#include "fracext/extension.hpp"
#include "fracext/io.hpp"
#include "fracext/traces.hpp"
#include "test_support.hpp"

using namespace fracext;
using namespace fracext::testing;

TEST_CASE("trace constants") {
  CHECK(std::abs(trace_constants(FracOrder(0.5)).c_s + 1.0) <= 1e-14);
  CHECK(std::abs(trace_constants(FracOrder(1.5)).c_s - 2.0) <= 1e-14);
  CHECK(std::abs(d_constant(FracOrder(1.5)) - 4.0 / 3.0) <= 1e-14);
  CHECK(trace_constants(FracOrder(1.5)).d_s.has_value());
  CHECK_FALSE(trace_constants(FracOrder(0.5)).d_s.has_value());
  CHECK_THROWS_AS(d_constant(FracOrder(2.5)), ValidationError);

  // reduced forms on (0,1) and (1,2)
  for (int i = 0; i < 20; ++i) {
    const double s = (i < 10) ? 0.05 + 0.09 * i : 1.05 + 0.09 * (i - 10);
    const double general = trace_constants(FracOrder(s)).c_s;
    const double reduced = s < 1.0
                               ? -std::tgamma(1.0 - s) / (std::pow(4.0, s - 0.5) * std::tgamma(s))
                               : std::tgamma(2.0 - s) / (std::pow(4.0, s - 1.5) * std::tgamma(s));
    CHECK(std::abs(general - reduced) <= 1e-12 * std::max(1.0, std::abs(reduced)));
  }
}

TEST_CASE("schedule") {
  const Generator g = diag({-1.0, -4.0});
  YSchedule ys;
  const auto pts = ys.points(g);
  REQUIRE(pts.size() == 11u);
  CHECK(pts[0] == doctest::Approx(0.4));
  CHECK(pts[10] == doctest::Approx(0.4 / 1024.0));
  const Generator big = diag({-1.0, -400.0});
  CHECK(ys.points(big)[0] == doctest::Approx(1.25 / 20.0));
  ys.factor = 1.5;
  CHECK_THROWS_AS(ys.validate(), ValidationError);
}

TEST_CASE("neumann trace") {
  const Generator g = diag({-1.0, -4.0});
  const Vector u = vec({1.0, 1.0});
  const auto est = trace_neumann(g, FracOrder(0.5), u);
  CHECK(est.converged);
  CHECK(rel(est.value, vec({1.0, 2.0})) <= 1e-6);
  CHECK(est.oracle_err.has_value());

  const auto zero = trace_neumann(g, FracOrder(0.5), Vector::Zero(2));
  CHECK(zero.value.isZero(0.0));
  CHECK(zero.converged);

  for (std::uint64_t seed : {1u, 7u}) {
    const Generator r = random_generator(8, seed);
    const Vector w = Vector::Ones(8);
    for (double s : {0.3, 1.5, 2.7}) {
      const auto e = trace_neumann(r, FracOrder(s), w);
      CHECK(*e.oracle_err <= 1e-5);
    }
  }
  CHECK(est.to_csv().find("step") != std::string::npos);
}

TEST_CASE("incremental trace") {
  const Generator scalar = diag({-1.0});
  const auto e = trace_incremental(scalar, FracOrder(0.5), vec({1.0}));
  CHECK(std::abs(e.value(0) - 1.0) <= 1e-4);

  const Generator g = diag({-1.0, -4.0});
  const auto e2 = trace_incremental(g, FracOrder(1.5), vec({1.0, 1.0}));
  CHECK(rel(e2.value, vec({1.0, 8.0})) <= 1e-3);
  CHECK(trace_incremental(g, FracOrder(1.5), Vector::Zero(2)).value.isZero(0.0));
  CHECK_THROWS_AS(trace_incremental(g, FracOrder(2.5), vec({1.0, 1.0})), ValidationError);
}

TEST_CASE("initial conditions") {
  const Generator g = diag({-1.0, -4.0});
  const Vector u = vec({1.0, 1.0});
  const auto report = initial_condition_suite(g, FracOrder(2.5), u);
  CHECK(report.all_pass());
  for (const auto& line : report.lines) {
    INFO(line.form, " ", line.kind, " m=", line.m, " err=", line.error);
    CHECK(line.pass);
  }
  const Generator one = diag({-1.0});
  const auto r1 = initial_condition_suite(one, FracOrder(2.5), vec({1.0}));
  for (const auto& line : r1.lines) {
    if (line.form == "radial" && line.kind == "value" && line.m == 1) {
      CHECK(std::abs(line.limit(0) + 2.0 / 3.0) <= 1e-4);
    }
    if (line.kind == "value" && line.m == 0) CHECK(std::abs(line.expected(0) - 1.0) <= 1e-15);
  }
  CHECK(report.to_csv().find("operator/radial,factor") != std::string::npos);
}

TEST_CASE("domain membership") {
  const Generator g = random_generator(8, 3);
  const Vector u = Vector::Ones(8);
  YSchedule shallow;
  shallow.count = 8;
  YSchedule deep;
  deep.count = 12;
  const auto a = domain_membership(g, FracOrder(0.7), u, {}, shallow);
  const auto b = domain_membership(g, FracOrder(0.7), u, {}, deep);
  CHECK(a.member);
  if (a.member) CHECK(b.member);
  CHECK(domain_membership(g, FracOrder(0.7), Vector::Zero(8)).member);
}
