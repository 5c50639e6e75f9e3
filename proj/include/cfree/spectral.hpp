#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "cfree/eigensolver.hpp"
#include "cfree/graph.hpp"
#include "cfree/params.hpp"

namespace cfree {

namespace detail {

template <class T>
T checked_add(T a, T b) {
  if constexpr (std::is_integral_v<T>) {
    T out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("walk count overflows 64 bits");
    return out;
  } else {
    return a + b;
  }
}

}  // namespace detail

// A = A_R (x) J_r + P^t (A_B (x) J_r) P, applied through block sums. A pair
// that is an edge in both colors gets weight 2.
class DominatingOperator {
 public:
  DominatingOperator(const BaseGraph& red, const BaseGraph& blue, const PartitionPair& partitions);

  std::uint32_t n() const { return static_cast<std::uint32_t>(red_block_.size()); }

  template <class T>
  void apply(std::span<const T> x, std::span<T> y) const {
    std::vector<T> red_sum(red_.m, T{}), blue_sum(blue_.m, T{});
    for (std::size_t v = 0; v < x.size(); ++v) {
      red_sum[red_block_[v]] = detail::checked_add(red_sum[red_block_[v]], x[v]);
      blue_sum[blue_block_[v]] = detail::checked_add(blue_sum[blue_block_[v]], x[v]);
    }
    std::vector<T> red_out(red_.m, T{}), blue_out(blue_.m, T{});
    for (std::uint32_t a = 0; a < red_.m; ++a) {
      for (Vertex b : red_.adj[a]) red_out[a] = detail::checked_add(red_out[a], red_sum[b]);
    }
    for (std::uint32_t a = 0; a < blue_.m; ++a) {
      for (Vertex b : blue_.adj[a]) blue_out[a] = detail::checked_add(blue_out[a], blue_sum[b]);
    }
    for (std::size_t v = 0; v < y.size(); ++v) {
      y[v] = detail::checked_add(red_out[red_block_[v]], blue_out[blue_block_[v]]);
    }
  }

  SymmetricApply as_apply() const;

 private:
  BaseGraph red_;
  BaseGraph blue_;
  std::vector<std::uint32_t> red_block_;
  std::vector<std::uint32_t> blue_block_;
};

struct SpectralDecomposition {
  double mu = 0.0;
  std::vector<double> v;  // unit, entrywise nonnegative
  double M_norm = 0.0;
  double v_inf = 0.0;
  double residual = 0.0;  // || A v - mu v || after taking |v|
  std::size_t iterations = 0;
};

// Top eigenpair; residual <= tol * mu on exit. M_norm is left at 0.
SpectralDecomposition top_eigenpair(const DominatingOperator& op, double tol = 1e-6, std::size_t max_iter = 10000,
                                    Seed seed = 0);

// || A - mu v v^t || computed on the complement of v.
double estimate_M_norm(const SymmetricApply& apply, std::size_t n, double mu, std::span<const double> v,
                       double tol = 1e-9, std::size_t max_iter = 10000, Seed seed = 0);
double estimate_M_norm(const DominatingOperator& op, double mu, std::span<const double> v, double tol = 1e-9,
                       std::size_t max_iter = 10000, Seed seed = 0);

// Ordered walks x_0 .. x_length with both ends in J: <1_J, A^length 1_J>.
// Throws std::overflow_error beyond 64 bits.
std::uint64_t count_walks_exact(const ColoredGraph& graph, std::span<const Vertex> J, int length);
std::uint64_t count_walks_exact(const Adjacency& graph, std::span<const Vertex> J, int length);
std::uint64_t count_walks_exact(const DominatingOperator& op, std::span<const Vertex> J, int length);

struct WalkBound {
  double closed_form = 0.0;   // delta^-2 2^ell p^(ell-1) n^(ell-2) |J|^2
  double intermediate = 0.0;  // mu^(ell-1) <1_J, v>^2 + |J| ||M||^(ell-1)
  bool has_intermediate = false;
};

WalkBound walk_bound(const Params& params, std::uint64_t j_size);
WalkBound walk_bound(const Params& params, const SpectralDecomposition& decomposition, std::span<const Vertex> J);

}  // namespace cfree
