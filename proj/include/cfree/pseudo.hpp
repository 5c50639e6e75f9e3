#pragma once

#include <cstdint>
#include <optional>

#include "cfree/graph.hpp"
#include "cfree/model.hpp"
#include "cfree/params.hpp"
#include "cfree/rng.hpp"

namespace cfree {

// 4 sigma of the binomial relative degree deviation.
double default_degree_tolerance(double p, std::uint32_t m);

struct DegreeCheck {
  double deviation = 0.0;  // max_x |d(x) / (p (m - 1)) - 1|
  double tol = 0.0;
  bool passed = false;
};

DegreeCheck check_degrees(const BaseGraph& base, double p, double tol);

struct SpectralDeviation {
  double value = 0.0;  // || A - p J ||_op
  double residual = 0.0;
  std::size_t iterations = 0;
  std::optional<double> dense_value;  // set when m <= dense_limit
};

inline constexpr std::uint32_t kDenseCrossCheckLimit = 200;

// Matrix-free; the all-ones term includes the diagonal. Throws
// ConvergenceError past max_iter.
SpectralDeviation spectral_deviation(const BaseGraph& base, double p, double tol = 1e-6, std::size_t max_iter = 10000,
                                     Seed seed = 0, std::uint32_t dense_limit = kDenseCrossCheckLimit);

struct TrialCount {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
};

// max(|pi_R(S)|, |pi_B(S)|) >= delta |S| for sampled S with |S| <= k.
// Samplers rotate: uniform, red-block concentrated, blue-block concentrated.
TrialCount check_projections(const PartitionPair& partitions, double delta, std::uint64_t k, std::uint64_t trials,
                             Seed seed);
// Every S with 1 <= |S| <= k; n <= 24.
TrialCount check_projections_exhaustive(const PartitionPair& partitions, double delta, std::uint64_t k);

struct DoubleDegree {
  std::uint32_t max_common = 0;  // max_v |N_R(v) cap N_B(v)|
  double bound = 0.0;            // n^(1 - eta) p
  bool passed = false;
};

DoubleDegree check_double_degree(const ColoredGraph& graph, double p, double eta);

// |boundary(S)| >= delta p n |S| / 8 for sampled S with |S| <= 1/(2p).
// Samplers rotate: uniform, block concentrated, neighbourhood concentrated.
TrialCount check_expansion(const ColoredGraph& graph, const PartitionPair& partitions, double p, double delta,
                           std::uint64_t trials, Seed seed);
TrialCount check_expansion_exhaustive(const ColoredGraph& graph, double p, double delta);

struct VerifyBudgets {
  std::uint64_t projection_trials = 1000;
  std::uint64_t expansion_trials = 1000;
  std::optional<double> degree_tol;  // default_degree_tolerance when empty
  Seed seed = 0;
};

struct VerifierReport {
  double degree_dev_red = 0.0;
  double degree_dev_blue = 0.0;
  double degree_tol = 0.0;
  bool degrees_ok = false;
  double spectral_dev_red = 0.0;
  double spectral_dev_blue = 0.0;
  double spectral_bound = 0.0;  // 3 sqrt(p m)
  bool spectral_ok = false;
  std::uint64_t projection_trials = 0;
  std::uint64_t projection_failures = 0;
  std::uint32_t double_degree_max = 0;
  double double_degree_bound = 0.0;
  bool double_degree_ok = false;
  std::uint64_t expansion_trials = 0;
  std::uint64_t expansion_failures = 0;
  bool passed = false;
};

VerifierReport verify_A(const Instance& instance, const VerifyBudgets& budgets);

}  // namespace cfree
