#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "fracext/generator.hpp"
#include "fracext/io.hpp"
#include "test_support.hpp"

using namespace fracext;
using namespace fracext::testing;

namespace {

// Symmetric negative definite: -(B B^T + n I) / n.
Matrix random_spd_generator(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b(i, j) = dist(rng);
  Eigen::MatrixXd l = -(b * b.transpose() + n * Eigen::MatrixXd::Identity(n, n)) / n;
  return l.cast<Complex>();
}

double op_norm(const Matrix& m) { return Eigen::JacobiSVD<Matrix>(m).singularValues()(0); }

}  // namespace

TEST_CASE("construction rejects bad generators") {
  CHECK_THROWS_AS(diag({-1.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(diag({0.0}), ValidationError);
  Matrix jordan = Matrix::Zero(2, 2);
  jordan(0, 0) = jordan(1, 1) = -1.0;
  jordan(0, 1) = 1.0;
  CHECK_THROWS_AS(Generator{jordan}, ValidationError);
  CHECK_THROWS_AS(Generator{Matrix::Zero(2, 3)}, ValidationError);
  const Generator g = diag({-1.0, -4.0});
  CHECK_THROWS_AS(g.apply(vec({1.0})), ValidationError);
}

TEST_CASE("semigroup") {
  const Generator g = diag({-1.0, -4.0});
  const Vector u = vec({1.0, 1.0});
  CHECK(rel(semigroup_apply(g, 0.0, u), u) == 0.0);
  CHECK(rel(semigroup_apply(g, std::log(2.0), u), vec({0.5, 1.0 / 16.0})) <= 1e-15);
  CHECK_THROWS_AS(semigroup_apply(g, -1.0, u), ValidationError);

  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Matrix l = random_spd_generator(8, seed);
    const Generator r{l};
    const Vector w = Vector::LinSpaced(8, 1.0, 2.0);
    for (double t : {0.1, 1.0, 3.0}) {
      const Matrix e = (t * l).exp();
      CHECK(rel(semigroup_apply(r, t, w), e * w) <= 1e-12);
    }
  }

  const Generator r = random_generator(8, 11);
  const Vector w = Vector::Ones(8);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  for (int i = 0; i < 20; ++i) {
    const double t1 = dist(rng), t2 = dist(rng);
    const Vector lhs = semigroup_apply(r, t1 + t2, w);
    const Vector rhs = semigroup_apply(r, t1, semigroup_apply(r, t2, w));
    CHECK((lhs - rhs).norm() <= 1e-11 * w.norm());
  }
  for (int i = 0; i <= 100; ++i) {
    CHECK(semigroup_apply(r, 0.1 * i, w).norm() <= r.bound() * w.norm() * (1.0 + 1e-12));
  }

  // (S_h u - u)/h - Lu = O(h)
  std::vector<double> errs;
  for (double h : {1e-2, 1e-3, 1e-4, 1e-5}) {
    errs.push_back(((semigroup_apply(r, h, w) - w) / h - r.apply(w)).norm());
  }
  for (std::size_t i = 1; i < errs.size(); ++i) {
    CHECK(std::log10(errs[i - 1] / errs[i]) >= 0.9);
  }
}

TEST_CASE("resolvent") {
  const Generator g = diag({-1.0});
  CHECK(std::abs(resolvent_apply(g, 1.0, vec({1.0}))(0) - 0.5) <= 1e-15);
  CHECK_THROWS_AS(resolvent_apply(g, -1.0, vec({1.0})), ValidationError);

  const Generator r = random_generator(8, 5);
  const Vector w = Vector::LinSpaced(8, -1.0, 1.0);
  for (double mu : {1e-3, 0.7, 50.0}) {
    const Vector x = resolvent_apply(r, mu, w);
    CHECK(rel(mu * x - r.apply(x), w) <= 1e-12);
  }
  for (unsigned seed = 1; seed <= 5; ++seed) {
    const Generator q = random_generator(8, seed);
    CHECK(nonnegativity_constant(q) <= q.bound() * (1.0 + 1e-9));
  }
}

TEST_CASE("spectral fractional power") {
  const Generator g = diag({-1.0, -4.0});
  CHECK(rel(spectral_frac_power(g, 0.5, vec({1.0, 1.0})), vec({1.0, 2.0})) <= 1e-15);

  const Generator r = random_generator(8, 9);
  const Vector w = Vector::Ones(8);
  for (auto [s1, s2] : {std::pair{0.3, 0.4}, std::pair{1.2, 0.7}, std::pair{2.5, 0.25}}) {
    const Vector a = spectral_frac_power(r, s2, spectral_frac_power(r, s1, w));
    CHECK(rel(a, spectral_frac_power(r, s1 + s2, w)) <= 1e-12);
  }
  CHECK(rel(spectral_frac_power(r, 1.0, w), -r.apply(w)) <= 1e-12);

  // symmetric with eigenvalues -1, -9
  const double c = std::cos(0.4), sn = std::sin(0.4);
  Matrix q(2, 2);
  q << c, -sn, sn, c;
  const Matrix l = q * Matrix(vec({-1.0, -9.0}).asDiagonal()) * q.transpose();
  const Matrix root = spectral_frac_power_matrix(Generator{l}, 0.5);
  CHECK(op_norm(root * root + l) <= 1e-12 * op_norm(l));
}

TEST_CASE("yosida approximation") {
  const Generator g = diag({-3.0});
  const Generator y = yosida_approx(g, 0.1);
  CHECK(std::abs(y.eigenvalues()(0) + 3.0 / 1.3) <= 1e-14);
  CHECK_THROWS_AS(yosida_approx(g, 0.0), ValidationError);

  const Generator r = random_generator(6, 4);
  const int n = r.dim();
  const Matrix a = -r.matrix();
  const Matrix id = Matrix::Identity(n, n);
  const Matrix target = (id + a).inverse();
  double prev = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const Matrix a_eps = -yosida_approx(r, eps).matrix();
    const double err = op_norm((id + a_eps).inverse() - target);
    CHECK(err < prev);
    prev = err;
  }

  // with U_eps = (I + eps A)^{-1} U:
  // A U_eps - A_eps U_eps = eps^{-1} (eps^{-1} + A)^{-1} A (eps^{-1} + A)^{-1} A U
  const Vector u = Vector::Ones(n);
  double prev_f = INFINITY;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const Matrix a_eps = -yosida_approx(r, eps).matrix();
    const Vector u_eps = (id + eps * a).inverse() * u;
    const Vector f = a * u_eps - a_eps * u_eps;
    const Matrix shifted = (id / eps + a).inverse();
    const Vector identity_form = (shifted * a * shifted * (a * u)) / eps;
    CHECK(rel(f, identity_form) <= 1e-10);
    CHECK(f.norm() < prev_f);
    prev_f = f.norm();
  }
}

TEST_CASE("builtins and parsing") {
  CHECK(builtin_matrix("diag-demo").dim() == 3);
  const Generator lap = builtin_matrix("laplacian1d:4");
  CHECK(std::abs(lap.matrix()(0, 0) + 50.0) <= 1e-12);
  CHECK(std::abs(lap.matrix()(0, 1) - 25.0) <= 1e-12);
  CHECK(builtin_matrix("random:5:7").dim() == 5);
  CHECK(rel(builtin_matrix("random:5:7").matrix().reshaped(),
            builtin_matrix("random:5:7").matrix().reshaped()) == 0.0);
  CHECK(is_builtin_matrix("laplacian1d:8"));
  CHECK_FALSE(is_builtin_matrix("matrix.txt"));
  CHECK_THROWS_AS(builtin_matrix("laplacian1d:1"), ValidationError);
  CHECK_THROWS_AS(builtin_matrix("random:x:1"), ValidationError);

  CHECK(parse_complex("1.5") == Complex(1.5, 0.0));
  CHECK(parse_complex("1+2i") == Complex(1.0, 2.0));
  CHECK(parse_complex("-0.5-1e-2i") == Complex(-0.5, -1e-2));
  CHECK(parse_complex("3i") == Complex(0.0, 3.0));
  CHECK(parse_complex("2e+1-1e-1i") == Complex(20.0, -0.1));
  CHECK_THROWS_AS(parse_complex("abc"), ValidationError);

  const auto dir = std::filesystem::temp_directory_path() / "fracext_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "m.txt").string();
  {
    std::ofstream out(path);
    out << "# generator\n2\n-1 0.5+1i\n0 -2\n";
  }
  const Matrix m = load_matrix(path);
  CHECK(m(0, 1) == Complex(0.5, 1.0));
  CHECK(m(1, 1) == Complex(-2.0, 0.0));
  {
    std::ofstream out(path);
    out << "2\n-1 0\n0\n";
  }
  CHECK_THROWS_AS(load_matrix(path), ValidationError);

  CHECK(vector_source("ones", 3) == Vector::Ones(3));
  CHECK(vector_source("basis:1", 3)(1) == Complex(1.0, 0.0));
  CHECK(vector_source("random:4", 3) == vector_source("random:4", 3));
  CHECK_THROWS_AS(vector_source("basis:5", 3), ValidationError);

  const auto out_path = (dir / "out.csv").string();
  write_file_atomic(out_path, "a,b\n1,2\n");
  std::ifstream in(out_path);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(content == "a,b\n1,2\n");
  std::filesystem::remove_all(dir);
}
