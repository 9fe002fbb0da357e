#pragma once

#include "fracext/types.hpp"

namespace fracext {

/// F_N(r) = e^{-r} - sum_{k=0}^{N} (-r)^k / k!, the remainder of the
/// exponential's Taylor polynomial. N = -1 gives e^{-r}. For r < 0.5 the
/// value is summed from the tail (25 terms) to avoid cancellation.
double exp_taylor_remainder(int n, double r);

/// F_N(r) / r^{N+1}, finite down to r = 0 where it equals (-1)^{N+1}/(N+1)!.
double exp_taylor_remainder_scaled(int n, double r);

/// e^{z} - 1 without cancellation for small |z|.
Complex expm1(Complex z);

/// Binomial coefficient as a double.
double binomial(int n, int k);

/// n! as a double.
double factorial(int n);

}  // namespace fracext
