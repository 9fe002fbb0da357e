#pragma once

#include <cmath>
#include <initializer_list>

#include "fracext/generator.hpp"

namespace fracext::testing {

inline Generator diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(d.size(), d.size());
  int i = 0;
  for (double x : d) {
    m(i, i) = x;
    ++i;
  }
  return Generator(m);
}

inline Vector vec(std::initializer_list<double> d) {
  Vector v(d.size());
  int i = 0;
  for (double x : d) v(i++) = x;
  return v;
}

inline double rel(const Vector& a, const Vector& b) {
  const double den = b.norm();
  return den > 0.0 ? (a - b).norm() / den : (a - b).norm();
}

// Scalar extension for L = -lambda: (2/Gamma(s)) (z/2)^s K_s(z), z = y sqrt(lambda).
inline double bessel_profile(double s, double lambda, double y) {
  const double z = y * std::sqrt(lambda);
  return 2.0 / std::tgamma(s) * std::pow(z / 2.0, s) * std::cyl_bessel_k(s, z);
}

// d/dy of bessel_profile, from d/dz[z^s K_s(z)] = -z^s K_{s-1}(z) and K_{-v} = K_v.
inline double bessel_profile_dy(double s, double lambda, double y) {
  const double z = y * std::sqrt(lambda);
  return -2.0 / std::tgamma(s) * std::pow(0.5, s) * std::pow(z, s) *
         std::cyl_bessel_k(std::abs(s - 1.0), z) * std::sqrt(lambda);
}

}  // namespace fracext::testing
