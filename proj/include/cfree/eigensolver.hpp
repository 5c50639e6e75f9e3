#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cfree/rng.hpp"

namespace cfree {

// y = A x for a symmetric operator A.
using SymmetricApply = std::function<void(std::span<const double> x, std::span<double> y)>;

enum class Which { largest_algebraic, largest_magnitude };

struct EigenOptions {
  std::size_t block = 8;
  double rel_tol = 1e-6;  // exit when the residual is <= rel_tol * |value|
  double abs_tol = 0.0;   // ... or <= abs_tol
  std::size_t max_iter = 10000;
  Seed seed = 0;
  Which which = Which::largest_magnitude;
  // Orthonormal vectors projected out of every iterate.
  std::vector<std::vector<double>> deflate;
};

struct EigenResult {
  double value = 0.0;
  std::vector<double> vector;  // unit norm
  double residual = 0.0;       // || A v - value v ||
  std::size_t iterations = 0;
};

// Subspace power iteration with a Rayleigh-Ritz step on every iterate.
// The start block is the all-ones vector plus a seeded perturbation, then
// seeded Gaussian columns. Throws ConvergenceError after max_iter.
EigenResult top_eigen(const SymmetricApply& apply, std::size_t n, const EigenOptions& options);

}  // namespace cfree
