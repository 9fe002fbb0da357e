#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fracext {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Bad input: dimension mismatch, out-of-range parameter, malformed file.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical procedure did not reach its tolerance. Carries the best
/// residual it achieved so callers can decide whether to accept it.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double achieved)
      : std::runtime_error(what + " (achieved residual " +
                           std::to_string(achieved) + ")"),
        achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace fracext
