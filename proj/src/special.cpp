#include "fracext/special.hpp"

#include <cmath>

namespace fracext {

double exp_taylor_remainder(int n, double r) {
  require(n >= -1, "Taylor remainder order must be >= -1");
  constexpr int kTailTerms = 25;
  if (r < 0.5) {
    // sum_{k=N+1}^{N+25} (-r)^k / k!
    double term = 1.0;
    for (int k = 1; k <= n + 1; ++k) term *= -r / k;
    double sum = term;
    for (int k = n + 2; k <= n + 1 + kTailTerms; ++k) {
      term *= -r / k;
      sum += term;
    }
    return sum;
  }
  double poly = 0.0;
  double term = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) term *= -r / k;
    poly += term;
  }
  return std::exp(-r) - poly;
}

double exp_taylor_remainder_scaled(int n, double r) {
  require(n >= -1, "Taylor remainder order must be >= -1");
  if (r >= 0.5) return exp_taylor_remainder(n, r) / std::pow(r, n + 1);
  double term = 1.0;
  for (int k = 1; k <= n + 1; ++k) term /= -k;
  double sum = term;
  for (int k = n + 2; k <= n + 26; ++k) {
    term *= -r / k;
    sum += term;
  }
  return sum;
}

Complex expm1(Complex z) {
  const double x = z.real();
  const double y = z.imag();
  if (std::abs(z) > 0.5) return std::exp(z) - 1.0;
  const double em1 = std::expm1(x);
  const double half_sin = std::sin(0.5 * y);
  // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
  return {em1 * std::cos(y) - 2.0 * half_sin * half_sin, std::exp(x) * std::sin(y)};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double factorial(int n) {
  double out = 1.0;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace fracext
