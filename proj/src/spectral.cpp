#include "cfree/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "cfree/errors.hpp"

namespace cfree {

DominatingOperator::DominatingOperator(const BaseGraph& red, const BaseGraph& blue, const PartitionPair& partitions)
    : red_(red), blue_(blue), red_block_(partitions.red.block_of), blue_block_(partitions.blue.block_of) {
  if (red.m != partitions.red.num_blocks() || blue.m != partitions.blue.num_blocks() ||
      red_block_.size() != blue_block_.size()) {
    throw ParameterError("dominating operator: base graphs and partitions disagree");
  }
}

SymmetricApply DominatingOperator::as_apply() const {
  return [this](std::span<const double> x, std::span<double> y) { apply<double>(x, y); };
}

SpectralDecomposition top_eigenpair(const DominatingOperator& op, double tol, std::size_t max_iter, Seed seed) {
  EigenOptions options;
  options.rel_tol = tol / 2;
  options.max_iter = max_iter;
  options.seed = seed;
  options.which = Which::largest_algebraic;
  const EigenResult eig = top_eigen(op.as_apply(), op.n(), options);

  SpectralDecomposition d;
  d.mu = eig.value;
  d.iterations = eig.iterations;
  d.v = eig.vector;
  double norm = 0.0;
  for (double& x : d.v) x = std::abs(x), norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : d.v) x /= norm;
  std::vector<double> av(d.v.size());
  op.apply<double>(d.v, av);
  double res = 0.0;
  for (std::size_t i = 0; i < av.size(); ++i) res += (av[i] - d.mu * d.v[i]) * (av[i] - d.mu * d.v[i]);
  d.residual = std::sqrt(res);
  if (d.residual > tol * std::abs(d.mu)) throw ConvergenceError("top_eigenpair: residual above tolerance after |v|");
  d.v_inf = d.v.empty() ? 0.0 : *std::max_element(d.v.begin(), d.v.end());
  return d;
}

double estimate_M_norm(const SymmetricApply& apply, std::size_t n, double mu, std::span<const double> v, double tol,
                       std::size_t max_iter, Seed seed) {
  std::vector<double> unit(v.begin(), v.end());
  double norm = 0.0;
  for (double x : unit) norm += x * x;
  norm = std::sqrt(norm);
  if (norm == 0.0) throw ParameterError("estimate_M_norm: zero eigenvector");
  for (double& x : unit) x /= norm;

  SymmetricApply m_apply = [&](std::span<const double> x, std::span<double> y) {
    apply(x, y);
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += unit[i] * x[i];
    for (std::size_t i = 0; i < n; ++i) y[i] -= mu * dot * unit[i];
  };
  EigenOptions options;
  options.rel_tol = tol;
  options.abs_tol = 1e-10 * std::max(1.0, std::abs(mu));
  options.max_iter = max_iter;
  options.seed = seed;
  options.which = Which::largest_magnitude;
  options.deflate.push_back(unit);
  return std::abs(top_eigen(m_apply, n, options).value);
}

double estimate_M_norm(const DominatingOperator& op, double mu, std::span<const double> v, double tol,
                       std::size_t max_iter, Seed seed) {
  return estimate_M_norm(op.as_apply(), op.n(), mu, v, tol, max_iter, seed);
}

namespace {

template <class Step>
std::uint64_t walks(std::size_t n, std::span<const Vertex> J, int length, Step step) {
  if (length < 1) throw ParameterError("walk length must be at least 1");
  std::vector<std::uint64_t> x(n, 0), y(n, 0);
  for (Vertex j : J) x.at(j) = 1;
  for (int i = 0; i < length; ++i) {
    step(x, y);
    std::swap(x, y);
  }
  std::uint64_t total = 0;
  std::vector<std::uint8_t> in_j(n, 0);
  for (Vertex j : J) in_j[j] = 1;
  for (std::size_t v = 0; v < n; ++v) {
    if (in_j[v]) total = detail::checked_add(total, x[v]);
  }
  return total;
}

void adjacency_step(const Adjacency& adj, const std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& y) {
  for (std::size_t v = 0; v < adj.size(); ++v) {
    std::uint64_t s = 0;
    for (Vertex u : adj[v]) s = detail::checked_add(s, x[u]);
    y[v] = s;
  }
}

}  // namespace

std::uint64_t count_walks_exact(const Adjacency& graph, std::span<const Vertex> J, int length) {
  return walks(graph.size(), J, length,
               [&](const std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& y) { adjacency_step(graph, x, y); });
}

std::uint64_t count_walks_exact(const ColoredGraph& graph, std::span<const Vertex> J, int length) {
  return count_walks_exact(graph.union_adjacency(), J, length);
}

std::uint64_t count_walks_exact(const DominatingOperator& op, std::span<const Vertex> J, int length) {
  return walks(op.n(), J, length, [&](const std::vector<std::uint64_t>& x, std::vector<std::uint64_t>& y) {
    op.apply<std::uint64_t>(x, y);
  });
}

WalkBound walk_bound(const Params& params, std::uint64_t j_size) {
  WalkBound b;
  const double n = static_cast<double>(params.n);
  const double js = static_cast<double>(j_size);
  b.closed_form = std::pow(params.delta, -2.0) * std::pow(2.0, params.ell) * std::pow(params.p, params.ell - 1) *
                  std::pow(n, params.ell - 2) * js * js;
  return b;
}

WalkBound walk_bound(const Params& params, const SpectralDecomposition& d, std::span<const Vertex> J) {
  WalkBound b = walk_bound(params, J.size());
  double dot = 0.0;
  for (Vertex j : J) dot += d.v.at(j);
  b.intermediate = std::pow(d.mu, params.ell - 1) * dot * dot +
                   static_cast<double>(J.size()) * std::pow(d.M_norm, params.ell - 1);
  b.has_intermediate = true;
  return b;
}

}  // namespace cfree
