#include "fracext/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

namespace fracext {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in(s);
  while (std::getline(in, part, sep)) out.push_back(part);
  return out;
}

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && !s.empty(), "invalid integer '" + s + "' in " + what);
  return static_cast<int>(v);
}

std::vector<std::string> read_tokens(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), "cannot read file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

Generator random_generator(int n, std::uint64_t seed, double lo, double hi) {
  require(n >= 1, "random generator needs n >= 1");
  require(lo <= hi && hi < 0.0, "random spectrum must lie in the open left half-line");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> spec(lo, hi);
  std::uniform_real_distribution<double> pert(-1.0, 1.0);
  Vector lam(n);
  for (int i = 0; i < n; ++i) lam(i) = spec(rng);
  Matrix v = Matrix::Identity(n, n);
  const double scale = 0.5 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v(i, j) += scale * pert(rng);
  }
  return Generator::from_factors(v, lam);
}

bool is_builtin_matrix(const std::string& name) {
  return name == "diag-demo" || name.rfind("laplacian1d:", 0) == 0 ||
         name.rfind("random:", 0) == 0;
}

Generator builtin_matrix(const std::string& name) {
  if (name == "diag-demo") {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = -1.0;
    m(1, 1) = -4.0;
    m(2, 2) = -9.0;
    return Generator(m);
  }
  const auto parts = split(name, ':');
  if (parts.size() == 2 && parts[0] == "laplacian1d") {
    const int n = parse_int(parts[1], name);
    require(n >= 2, "laplacian1d needs n >= 2");
    const double h2 = static_cast<double>(n + 1) * (n + 1);
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = -2.0 * h2;
      if (i + 1 < n) {
        m(i, i + 1) = h2;
        m(i + 1, i) = h2;
      }
    }
    return Generator(m);
  }
  if (parts.size() == 3 && parts[0] == "random") {
    const int n = parse_int(parts[1], name);
    require(n >= 2, "random generator needs n >= 2");
    const int seed = parse_int(parts[2], name);
    require(seed >= 0, "random seed must be nonnegative");
    return random_generator(n, static_cast<std::uint64_t>(seed));
  }
  throw ValidationError("unknown builtin matrix '" + name + "'");
}

Complex parse_complex(const std::string& token) {
  require(!token.empty(), "empty numeric entry");
  auto to_double = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used == s.size() && !s.empty(), "malformed numeric entry '" + token + "'");
    return v;
  };
  if (token.back() != 'i' && token.back() != 'j') return {to_double(token), 0.0};
  const std::string body = token.substr(0, token.size() - 1);
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split_at = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split_at = i;
      break;
    }
  }
  auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return to_double(s);
  };
  if (split_at == std::string::npos) return {0.0, imag_of(body)};
  return {to_double(body.substr(0, split_at)), imag_of(body.substr(split_at))};
}

Matrix load_matrix(const std::string& path) {
  const auto tokens = read_tokens(path);
  require(!tokens.empty(), "matrix file '" + path + "' is empty");
  const int dim = parse_int(tokens[0], path);
  require(dim >= 1, "matrix dimension must be positive");
  require(tokens.size() == 1 + static_cast<std::size_t>(dim) * dim,
          "matrix file '" + path + "' must contain dim*dim = " + std::to_string(dim * dim) +
              " entries, found " + std::to_string(tokens.size() - 1));
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = parse_complex(tokens[1 + i * dim + j]);
  }
  return m;
}

Vector load_vector(const std::string& path) {
  const auto tokens = read_tokens(path);
  require(!tokens.empty(), "vector file '" + path + "' is empty");
  const int dim = parse_int(tokens[0], path);
  require(dim >= 1 && tokens.size() == 1 + static_cast<std::size_t>(dim),
          "vector file '" + path + "' must contain dim entries after the dimension");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = parse_complex(tokens[1 + i]);
  return v;
}

Vector vector_source(const std::string& spec, int dim) {
  if (spec.empty() || spec == "ones") return Vector::Ones(dim);
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "basis") {
    const int i = parse_int(parts[1], spec);
    require(i >= 0 && i < dim, "basis index out of range");
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
  }
  if (parts.size() == 2 && parts[0] == "random") {
    std::mt19937_64 rng(static_cast<std::uint64_t>(parse_int(parts[1], spec)));
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = d(rng);
    return v;
  }
  Vector v = load_vector(spec);
  require(v.size() == dim, "vector length " + std::to_string(v.size()) +
                               " does not match generator dimension " + std::to_string(dim));
  return v;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(std::random_device{}());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    require(static_cast<bool>(out), "write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw ValidationError("cannot move output into place at '" + path + "': " + ec.message());
  }
}

}  // namespace fracext
