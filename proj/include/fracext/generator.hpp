#pragma once

#include <functional>

#include "fracext/types.hpp"

namespace fracext {

/// Generator L of a uniformly bounded semigroup, represented by a dense
/// diagonalizable matrix with spectrum in the open left half-plane.
///
/// The eigendecomposition L = V diag(lambda) V^{-1} is computed once at
/// construction; matrices that fail the reconstruction residual or have an
/// eigenvalue with Re(lambda) >= 0 are rejected. The object is immutable.
class Generator {
 public:
  explicit Generator(Matrix matrix);

  /// Builds L = V diag(eigenvalues) V^{-1} from a known factorization.
  static Generator from_factors(const Matrix& eigvecs, const Vector& eigenvalues);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  const Vector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigvecs() const { return eigvecs_; }
  const Matrix& eigvecs_inv() const { return eigvecs_inv_; }

  /// Surrogate semigroup bound M = cond(V) in the spectral norm.
  double bound() const { return bound_; }

  /// Largest |lambda_i|.
  double spectral_radius() const;

  /// Smallest -Re(lambda_i); positive by construction.
  double spectral_gap() const;

  void check_dim(const Vector& u) const;

  /// Coordinates of u in the eigenbasis, V^{-1} u.
  Vector to_eigen(const Vector& u) const;
  /// Maps eigen-coordinates back, V w.
  Vector from_eigen(const Vector& w) const;

  /// V diag(fn(lambda_i)) V^{-1} u.
  Vector spectral_apply(const std::function<Complex(Complex)>& fn, const Vector& u) const;

  /// L u.
  Vector apply(const Vector& u) const;
  /// L^k u by repeated multiplication.
  Vector apply_power(int k, const Vector& u) const;

 private:
  Generator(Matrix matrix, Vector eigenvalues, Matrix eigvecs, Matrix eigvecs_inv);
  void validate();

  Matrix matrix_;
  Vector eigenvalues_;
  Matrix eigvecs_;
  Matrix eigvecs_inv_;
  double bound_ = 1.0;
};

/// e^{tL} u for t >= 0.
Vector semigroup_apply(const Generator& g, double t, const Vector& u);

/// (mu I - L)^{-1} u by a dense LU solve. Throws when mu is (numerically)
/// an eigenvalue of L.
Vector resolvent_apply(const Generator& g, Complex mu, const Vector& u);

/// Solves (a I - b L) x = u by a dense LU factorization.
Vector shifted_solve(const Generator& g, Complex a, Complex b, const Vector& u);

/// (-L)^s u on the principal branch, evaluated through the eigendecomposition.
/// Any real s is accepted; negative s gives inverse powers.
Vector spectral_frac_power(const Generator& g, double s, const Vector& u);

/// Matrix of (-L)^s.
Matrix spectral_frac_power_matrix(const Generator& g, double s);

/// Generator -A_eps with A_eps = A (I + eps A)^{-1} and A = -L.
Generator yosida_approx(const Generator& g, double eps);

/// sup over a log-spaced mu grid of ||mu (mu I + A)^{-1}||_2 with A = -L.
double nonnegativity_constant(const Generator& g, double mu_min = 1e-3, double mu_max = 1e3,
                              int samples = 61);

}  // namespace fracext
