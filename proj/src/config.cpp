#include "fracext/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace fracext {

namespace {

const std::map<std::string, Method>& method_names() {
  static const std::map<std::string, Method> names = {
      {"spectral", Method::spectral},
      {"balakrishnan", Method::balakrishnan},
      {"bbw", Method::bbw},
      {"trace_neumann", Method::trace_neumann},
      {"trace_incremental", Method::trace_incremental},
      {"extend", Method::extend},
      {"verify", Method::verify},
  };
  return names;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string describe(const std::string& origin, int line, const std::string& msg) {
  std::ostringstream out;
  out << origin;
  if (line > 0) out << ":" << line;
  out << ": " << msg;
  return out.str();
}

}  // namespace

ConfigError::ConfigError(const std::string& origin, int line, const std::string& msg)
    : ValidationError(describe(origin, line, msg)), line_(line) {}

std::string to_string(Method m) {
  for (const auto& [name, value] : method_names())
    if (value == m) return name;
  return "unknown";
}

Method method_from_string(const std::string& name) {
  const auto it = method_names().find(name);
  require(it != method_names().end(), "unknown method '" + name + "'");
  return it->second;
}

void RunConfig::validate() const {
  require(!matrix_source.empty(), "matrix source is empty");
  FracOrder check(s);
  ygrid.validate();
  quadrature.validate();
  require(bbw_k == 0 || bbw_k > s, "bbw_k must exceed s");
  require(bbw.eps0 > 0.0 && bbw.levels >= 2 && bbw.tol > 0.0, "invalid BBW schedule");
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(origin, lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(origin, lineno, "missing key before '='");
    if (value.empty()) throw ConfigError(origin, lineno, "missing value for '" + key + "'");
    if (auto it = seen.find(key); it != seen.end()) {
      throw ConfigError(origin, lineno,
                        "duplicate key '" + key + "' (first set on line " +
                            std::to_string(it->second) + ")");
    }
    seen[key] = lineno;

    auto number = [&]() {
      std::size_t used = 0;
      double x = 0.0;
      try {
        x = std::stod(value, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != value.size() || !std::isfinite(x))
        throw ConfigError(origin, lineno, "'" + key + "' needs a number, got '" + value + "'");
      return x;
    };
    auto integer = [&]() {
      const double x = number();
      if (x != std::floor(x) || std::abs(x) > 1e15)
        throw ConfigError(origin, lineno, "'" + key + "' needs an integer, got '" + value + "'");
      return static_cast<long long>(x);
    };
    auto boolean = [&]() {
      if (value == "true" || value == "1" || value == "yes") return true;
      if (value == "false" || value == "0" || value == "no") return false;
      throw ConfigError(origin, lineno, "'" + key + "' needs true or false, got '" + value + "'");
    };

    try {
      if (key == "matrix") {
        cfg.matrix_source = value;
      } else if (key == "s") {
        cfg.s = number();
        FracOrder check(cfg.s);
      } else if (key == "method") {
        cfg.method = method_from_string(value);
      } else if (key == "u") {
        cfg.u_source = value;
      } else if (key == "seed") {
        const long long v = integer();
        if (v < 0) throw ConfigError(origin, lineno, "seed must be nonnegative");
        cfg.seed = static_cast<std::uint64_t>(v);
      } else if (key == "output") {
        cfg.output_path = value;
      } else if (key == "ygrid_start") {
        cfg.ygrid.start = number();
      } else if (key == "ygrid_factor") {
        cfg.ygrid.factor = number();
      } else if (key == "ygrid_count") {
        cfg.ygrid.count = static_cast<int>(integer());
      } else if (key == "ygrid_adapt") {
        cfg.ygrid.adapt_to_spectrum = boolean();
      } else if (key == "quadrature") {
        cfg.quadrature.scheme = scheme_from_string(value);
      } else if (key == "nodes") {
        cfg.quadrature.nodes = static_cast<int>(integer());
      } else if (key == "alpha") {
        cfg.quadrature.alpha = number();
      } else if (key == "tol") {
        cfg.quadrature.tol = number();
      } else if (key == "bbw_k") {
        cfg.bbw_k = static_cast<int>(integer());
      } else if (key == "bbw_eps0") {
        cfg.bbw.eps0 = number();
      } else if (key == "bbw_levels") {
        cfg.bbw.levels = static_cast<int>(integer());
      } else if (key == "bbw_tol") {
        cfg.bbw.tol = number();
      } else {
        throw ConfigError(origin, lineno, "unknown key '" + key + "'");
      }
    } catch (const ConfigError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ConfigError(origin, lineno, e.what());
    }
  }

  if (!seen.count("matrix")) throw ConfigError(origin, lineno, "missing required key 'matrix'");
  if (!seen.count("s")) throw ConfigError(origin, lineno, "missing required key 's'");
  try {
    cfg.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(origin, 0, e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

}  // namespace fracext
