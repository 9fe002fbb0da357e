#include "fracext/generator.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace fracext {

namespace {

double spectral_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

}  // namespace

Generator::Generator(Matrix matrix) : matrix_(std::move(matrix)) {
  require(matrix_.rows() > 0 && matrix_.rows() == matrix_.cols(),
          "generator matrix must be square and non-empty");
  require(matrix_.allFinite(), "generator matrix has non-finite entries");

  Eigen::ComplexEigenSolver<Matrix> solver(matrix_, /*computeEigenvectors=*/true);
  require(solver.info() == Eigen::Success, "eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigvecs_ = solver.eigenvectors();

  Eigen::FullPivLU<Matrix> lu(eigvecs_);
  require(lu.isInvertible(), "generator is not diagonalizable (singular eigenvector matrix)");
  eigvecs_inv_ = lu.inverse();
  validate();
}

Generator::Generator(Matrix matrix, Vector eigenvalues, Matrix eigvecs, Matrix eigvecs_inv)
    : matrix_(std::move(matrix)),
      eigenvalues_(std::move(eigenvalues)),
      eigvecs_(std::move(eigvecs)),
      eigvecs_inv_(std::move(eigvecs_inv)) {
  validate();
}

Generator Generator::from_factors(const Matrix& eigvecs, const Vector& eigenvalues) {
  require(eigvecs.rows() == eigvecs.cols() && eigvecs.rows() == eigenvalues.size(),
          "eigenvector matrix and eigenvalue list sizes disagree");
  Eigen::FullPivLU<Matrix> lu(eigvecs);
  require(lu.isInvertible(), "eigenvector matrix is singular");
  Matrix inv = lu.inverse();
  Matrix l = eigvecs * eigenvalues.asDiagonal() * inv;
  return Generator(std::move(l), eigenvalues, eigvecs, std::move(inv));
}

void Generator::validate() {
  for (Eigen::Index i = 0; i < eigenvalues_.size(); ++i) {
    require(eigenvalues_(i).real() < 0.0,
            "generator eigenvalue with nonnegative real part: semigroup is not "
            "uniformly bounded with 0 in the resolvent set");
  }
  const double norm_l = spectral_norm(matrix_);
  const Matrix rebuilt = eigvecs_ * eigenvalues_.asDiagonal() * eigvecs_inv_;
  const double residual = spectral_norm(rebuilt - matrix_);
  require(residual <= 1e-10 * std::max(norm_l, 1e-300),
          "eigendecomposition reconstruction residual too large");
  bound_ = std::max(1.0, spectral_norm(eigvecs_) * spectral_norm(eigvecs_inv_));
}

double Generator::spectral_radius() const { return eigenvalues_.cwiseAbs().maxCoeff(); }

double Generator::spectral_gap() const { return (-eigenvalues_.real()).minCoeff(); }

void Generator::check_dim(const Vector& u) const {
  require(u.size() == matrix_.rows(), "vector length " + std::to_string(u.size()) +
                                          " does not match generator dimension " +
                                          std::to_string(matrix_.rows()));
}

Vector Generator::to_eigen(const Vector& u) const {
  check_dim(u);
  return eigvecs_inv_ * u;
}

Vector Generator::from_eigen(const Vector& w) const { return eigvecs_ * w; }

Vector Generator::spectral_apply(const std::function<Complex(Complex)>& fn,
                                 const Vector& u) const {
  Vector w = to_eigen(u);
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) *= fn(eigenvalues_(i));
  return from_eigen(w);
}

Vector Generator::apply(const Vector& u) const {
  check_dim(u);
  return matrix_ * u;
}

Vector Generator::apply_power(int k, const Vector& u) const {
  require(k >= 0, "negative matrix power");
  check_dim(u);
  Vector v = u;
  for (int i = 0; i < k; ++i) v = matrix_ * v;
  return v;
}

Vector semigroup_apply(const Generator& g, double t, const Vector& u) {
  require(t >= 0.0, "semigroup time must be nonnegative");
  if (t == 0.0) {
    g.check_dim(u);
    return u;
  }
  return g.spectral_apply([t](Complex lam) { return std::exp(t * lam); }, u);
}

Vector resolvent_apply(const Generator& g, Complex mu, const Vector& u) {
  g.check_dim(u);
  const Vector& lam = g.eigenvalues();
  const double scale = std::max(1.0, std::abs(mu));
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    require(std::abs(mu - lam(i)) > 1e-13 * scale,
            "resolvent parameter coincides with an eigenvalue (singular solve)");
  }
  return shifted_solve(g, mu, 1.0, u);
}

Vector shifted_solve(const Generator& g, Complex a, Complex b, const Vector& u) {
  g.check_dim(u);
  Matrix shifted = -b * g.matrix();
  shifted.diagonal().array() += a;
  Eigen::PartialPivLU<Matrix> lu(shifted);
  return lu.solve(u);
}

Vector spectral_frac_power(const Generator& g, double s, const Vector& u) {
  return g.spectral_apply([s](Complex lam) { return std::pow(-lam, s); }, u);
}

Matrix spectral_frac_power_matrix(const Generator& g, double s) {
  Vector d(g.dim());
  for (int i = 0; i < g.dim(); ++i) d(i) = std::pow(-g.eigenvalues()(i), s);
  return g.eigvecs() * d.asDiagonal() * g.eigvecs_inv();
}

Generator yosida_approx(const Generator& g, double eps) {
  require(eps > 0.0, "Yosida parameter must be positive");
  Vector lam(g.dim());
  for (int i = 0; i < g.dim(); ++i) {
    const Complex a = -g.eigenvalues()(i);
    const Complex denom = 1.0 + eps * a;
    require(std::abs(denom) > 0.0, "I + eps A is singular");
    lam(i) = -a / denom;
  }
  return Generator::from_factors(g.eigvecs(), lam);
}

double nonnegativity_constant(const Generator& g, double mu_min, double mu_max, int samples) {
  require(mu_min > 0.0 && mu_max > mu_min && samples >= 2, "invalid mu sampling range");
  const int n = g.dim();
  double sup = 0.0;
  const double step = std::log(mu_max / mu_min) / (samples - 1);
  for (int j = 0; j < samples; ++j) {
    const double mu = mu_min * std::exp(step * j);
    Matrix m = g.matrix() * -1.0;
    m.diagonal().array() += mu;
    Matrix r = Eigen::PartialPivLU<Matrix>(m).solve(Matrix::Identity(n, n));
    sup = std::max(sup, mu * spectral_norm(r));
  }
  return sup;
}

}  // namespace fracext
