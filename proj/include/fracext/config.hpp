#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fracext/quadrature.hpp"
#include "fracext/traces.hpp"

namespace fracext {

enum class Method { spectral, balakrishnan, bbw, trace_neumann, trace_incremental, extend, verify };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

/// Parse error tied to a line of the configuration text (line 0 when the
/// problem is not on a particular line).
class ConfigError : public ValidationError {
 public:
  ConfigError(const std::string& origin, int line, const std::string& msg);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct RunConfig {
  std::string matrix_source;
  double s = 0.0;
  std::optional<Method> method;
  std::string u_source = "ones";
  YSchedule ygrid;
  QuadratureSpec quadrature;
  std::string output_path;
  std::uint64_t seed = 0;
  /// BBW difference order; 0 selects [s]+1.
  int bbw_k = 0;
  BbwOptions bbw;

  void validate() const;
};

/// Parses `key = value` lines; `#` starts a comment. Keys:
///   matrix, s, method, u, seed, output,
///   ygrid_start, ygrid_factor, ygrid_count, ygrid_adapt,
///   quadrature, nodes, alpha, tol,
///   bbw_k, bbw_eps0, bbw_levels, bbw_tol.
/// `matrix` and `s` are required. Errors name `origin` and the line.
RunConfig parse_config(const std::string& text, const std::string& origin = "config");

RunConfig load_config(const std::string& path);

}  // namespace fracext
