#pragma once

#include <cstdint>
#include <string>

#include "fracext/generator.hpp"

namespace fracext {

/// Demo generators: "diag-demo" = diag(-1,-4,-9); "laplacian1d:n" = the
/// Dirichlet second-difference matrix (n+1)^2 tridiag(1,-2,1);
/// "random:n:seed" = V diag(lambda) V^{-1} with lambda uniform in
/// [-10,-0.5] and V a seeded perturbation of the identity.
Generator builtin_matrix(const std::string& name);

/// True when `name` has the syntax of a builtin generator.
bool is_builtin_matrix(const std::string& name);

/// Seeded random generator of size n with spectrum in [lo, hi] (hi < 0).
Generator random_generator(int n, std::uint64_t seed, double lo = -10.0, double hi = -0.5);

/// Parses one entry: "1.5", "-2e-3", "1+2i", "-0.5-1e-2i", "3i".
Complex parse_complex(const std::string& token);

/// Reads a matrix file: first line `dim`, then dim rows of dim entries.
/// Blank lines and `#` comments are ignored.
Matrix load_matrix(const std::string& path);

/// Reads a vector file: first line `dim`, then dim entries (any layout).
Vector load_vector(const std::string& path);

/// Vector source used by the CLI: "ones" (default), "basis:i", "random:seed",
/// or a path to a vector file.
Vector vector_source(const std::string& spec, int dim);

/// Writes `content` to `path` through a sibling temp file and a rename.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace fracext
