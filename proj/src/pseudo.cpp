#include "cfree/pseudo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "cfree/eigensolver.hpp"
#include "cfree/errors.hpp"

namespace cfree {

double default_degree_tolerance(double p, std::uint32_t m) {
  return 4.0 * std::sqrt((1.0 - p) / (p * static_cast<double>(m)));
}

DegreeCheck check_degrees(const BaseGraph& base, double p, double tol) {
  DegreeCheck out;
  out.tol = tol;
  const double expected = p * (static_cast<double>(base.m) - 1.0);
  for (Vertex a = 0; a < base.m; ++a) {
    const double d = base.degree(a);
    double dev;
    if (expected > 0) dev = std::abs(d / expected - 1.0);
    else dev = d == 0 ? 0.0 : std::numeric_limits<double>::infinity();
    out.deviation = std::max(out.deviation, dev);
  }
  out.passed = out.deviation <= tol;
  return out;
}

SpectralDeviation spectral_deviation(const BaseGraph& base, double p, double tol, std::size_t max_iter, Seed seed,
                                     std::uint32_t dense_limit) {
  if (base.m < 2) throw ParameterError("spectral_deviation needs m >= 2");
  const std::size_t m = base.m;
  SymmetricApply apply = [&](std::span<const double> x, std::span<double> y) {
    double total = 0.0;
    for (double xi : x) total += xi;
    for (std::size_t a = 0; a < m; ++a) {
      double s = 0.0;
      for (Vertex b : base.adj[a]) s += x[b];
      y[a] = s - p * total;
    }
  };
  EigenOptions options;
  options.rel_tol = tol;
  options.max_iter = max_iter;
  options.seed = seed;
  options.which = Which::largest_magnitude;
  const EigenResult eig = top_eigen(apply, m, options);

  SpectralDeviation out;
  out.value = std::abs(eig.value);
  out.residual = eig.residual;
  out.iterations = eig.iterations;
  if (base.m <= dense_limit) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(base.m, base.m, -p);
    for (std::size_t i = 0; i < m; ++i) {
      for (Vertex j : base.adj[i]) a(static_cast<Eigen::Index>(i), j) += 1.0;
    }
    out.dense_value = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .cwiseAbs()
                          .maxCoeff();
  }
  return out;
}

namespace {

class Stamp {
 public:
  explicit Stamp(std::size_t n) : mark_(n, 0) {}
  void next() { ++round_; }
  // True the first time x is seen in this round.
  bool insert(std::size_t x) {
    if (mark_[x] == round_) return false;
    mark_[x] = round_;
    return true;
  }
  bool contains(std::size_t x) const { return mark_[x] == round_; }

 private:
  std::vector<std::uint64_t> mark_;
  std::uint64_t round_ = 1;
};

// Vertices from randomly ordered blocks of one partition until t are taken.
void fill_from_blocks(const Partition& part, std::size_t t, Rng& rng, std::vector<Vertex>& out) {
  std::vector<std::uint32_t> order(part.num_blocks());
  std::iota(order.begin(), order.end(), 0u);
  rng.shuffle(std::span(order));
  for (std::uint32_t b : order) {
    for (Vertex v : part.blocks[b]) {
      if (out.size() == t) return;
      out.push_back(v);
    }
  }
}

void partial_shuffle(std::vector<Vertex>& pool, std::size_t t, Rng& rng, std::vector<Vertex>& out) {
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(pool.size() - i));
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
}

std::size_t projection(const Partition& part, const std::vector<Vertex>& s, Stamp& stamp) {
  stamp.next();
  std::size_t count = 0;
  for (Vertex v : s) count += stamp.insert(part.block_of[v]) ? 1 : 0;
  return count;
}

}  // namespace

TrialCount check_projections(const PartitionPair& partitions, double delta, std::uint64_t k, std::uint64_t trials,
                             Seed seed) {
  const std::uint32_t n = partitions.red.n();
  const std::size_t kmax = std::min<std::uint64_t>(k, n);
  TrialCount out;
  if (kmax == 0) return out;
  Rng rng(seed);
  std::vector<Vertex> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  Stamp red_stamp(partitions.red.num_blocks()), blue_stamp(partitions.blue.num_blocks());
  std::vector<Vertex> s;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::size_t t = 1 + static_cast<std::size_t>(rng.below(kmax));
    s.clear();
    switch (trial % 3) {
      case 0: partial_shuffle(pool, t, rng, s); break;
      case 1: fill_from_blocks(partitions.red, t, rng, s); break;
      default: fill_from_blocks(partitions.blue, t, rng, s); break;
    }
    const std::size_t pr = projection(partitions.red, s, red_stamp);
    const std::size_t pb = projection(partitions.blue, s, blue_stamp);
    ++out.trials;
    if (static_cast<double>(std::max(pr, pb)) < delta * static_cast<double>(t)) ++out.failures;
  }
  return out;
}

TrialCount check_projections_exhaustive(const PartitionPair& partitions, double delta, std::uint64_t k) {
  const std::uint32_t n = partitions.red.n();
  if (n > 24) throw ParameterError("exhaustive projection check needs n <= 24");
  auto masks = [](const Partition& part) {
    std::vector<std::uint32_t> out;
    for (const auto& block : part.blocks) {
      std::uint32_t m = 0;
      for (Vertex v : block) m |= 1u << v;
      out.push_back(m);
    }
    return out;
  };
  const auto red = masks(partitions.red), blue = masks(partitions.blue);
  TrialCount out;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    const int t = std::popcount(s);
    if (static_cast<std::uint64_t>(t) > k) continue;
    int pr = 0, pb = 0;
    for (std::uint32_t m : red) pr += (m & s) != 0;
    for (std::uint32_t m : blue) pb += (m & s) != 0;
    ++out.trials;
    if (static_cast<double>(std::max(pr, pb)) < delta * t) ++out.failures;
  }
  return out;
}

DoubleDegree check_double_degree(const ColoredGraph& graph, double p, double eta) {
  DoubleDegree out;
  out.bound = std::pow(static_cast<double>(graph.n()), 1.0 - eta) * p;
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (!graph.alive(v)) continue;
    const auto red = graph.neighbors(Color::red, v);
    const auto blue = graph.neighbors(Color::blue, v);
    std::uint32_t common = 0;
    auto i = red.begin();
    auto j = blue.begin();
    while (i != red.end() && j != blue.end()) {
      if (*i < *j) ++i;
      else if (*j < *i) ++j;
      else {
        if (graph.alive(*i)) ++common;
        ++i, ++j;
      }
    }
    out.max_common = std::max(out.max_common, common);
  }
  out.passed = out.max_common <= out.bound;
  return out;
}

TrialCount check_expansion(const ColoredGraph& graph, const PartitionPair& partitions, double p, double delta,
                           std::uint64_t trials, Seed seed) {
  const Adjacency adj = graph.union_adjacency();
  std::vector<Vertex> alive;
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (graph.alive(v)) alive.push_back(v);
  }
  TrialCount out;
  const std::size_t smax = std::min<std::size_t>(static_cast<std::size_t>(std::floor(1.0 / (2.0 * p))), alive.size());
  if (smax == 0) return out;
  const double per_vertex = delta * p * static_cast<double>(graph.n()) / 8.0;
  Rng rng(seed);
  Stamp in_s(graph.n()), seen(graph.n());
  std::vector<Vertex> s, candidates;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const std::size_t t = 1 + static_cast<std::size_t>(rng.below(smax));
    s.clear();
    switch (trial % 3) {
      case 0: partial_shuffle(alive, t, rng, s); break;
      case 1: {
        candidates.clear();
        fill_from_blocks(trial % 2 ? partitions.red : partitions.blue, graph.n(), rng, candidates);
        for (Vertex v : candidates) {
          if (s.size() == t) break;
          if (graph.alive(v)) s.push_back(v);
        }
        break;
      }
      default: {
        // Breadth-first ball around a random alive vertex.
        seen.next();
        const Vertex root = alive[rng.below(alive.size())];
        seen.insert(root);
        s.push_back(root);
        for (std::size_t head = 0; head < s.size() && s.size() < t; ++head) {
          for (Vertex u : adj[s[head]]) {
            if (s.size() == t) break;
            if (seen.insert(u)) s.push_back(u);
          }
        }
        break;
      }
    }
    in_s.next();
    for (Vertex v : s) in_s.insert(v);
    seen.next();
    std::size_t boundary = 0;
    for (Vertex v : s) {
      for (Vertex u : adj[v]) {
        if (!in_s.contains(u) && seen.insert(u)) ++boundary;
      }
    }
    ++out.trials;
    if (static_cast<double>(boundary) < per_vertex * static_cast<double>(s.size())) ++out.failures;
  }
  return out;
}

TrialCount check_expansion_exhaustive(const ColoredGraph& graph, double p, double delta) {
  const std::uint32_t n = graph.n();
  if (n > 24) throw ParameterError("exhaustive expansion check needs n <= 24");
  const Adjacency adj = graph.union_adjacency();
  std::vector<std::uint32_t> nbr(n, 0);
  std::uint32_t alive_mask = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (graph.alive(v)) alive_mask |= 1u << v;
    for (Vertex u : adj[v]) nbr[v] |= 1u << u;
  }
  const auto smax = static_cast<int>(std::floor(1.0 / (2.0 * p)));
  const double per_vertex = delta * p * static_cast<double>(n) / 8.0;
  TrialCount out;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    if ((s & ~alive_mask) != 0) continue;
    const int t = std::popcount(s);
    if (t > smax) continue;
    std::uint32_t reach = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) reach |= nbr[std::countr_zero(rest)];
    ++out.trials;
    if (std::popcount(reach & ~s) < per_vertex * t) ++out.failures;
  }
  return out;
}

VerifierReport verify_A(const Instance& instance, const VerifyBudgets& budgets) {
  const Params& params = instance.params;
  const std::uint32_t m = static_cast<std::uint32_t>(params.blocks());
  VerifierReport r;
  r.degree_tol = budgets.degree_tol.value_or(default_degree_tolerance(params.p, m));
  const DegreeCheck dr = check_degrees(instance.red_base, params.p, r.degree_tol);
  const DegreeCheck db = check_degrees(instance.blue_base, params.p, r.degree_tol);
  r.degree_dev_red = dr.deviation;
  r.degree_dev_blue = db.deviation;
  r.degrees_ok = dr.passed && db.passed;

  r.spectral_bound = 3.0 * std::sqrt(params.p * m);
  if (m >= 2) {
    r.spectral_dev_red = spectral_deviation(instance.red_base, params.p, 1e-6, 10000,
                                            derive_seed(budgets.seed, "verify.spectral.red"), 0)
                             .value;
    r.spectral_dev_blue = spectral_deviation(instance.blue_base, params.p, 1e-6, 10000,
                                             derive_seed(budgets.seed, "verify.spectral.blue"), 0)
                              .value;
  }
  r.spectral_ok = r.spectral_dev_red <= r.spectral_bound && r.spectral_dev_blue <= r.spectral_bound;

  const TrialCount proj = check_projections(instance.partitions, params.delta, params.k, budgets.projection_trials,
                                            derive_seed(budgets.seed, "verify.projections"));
  r.projection_trials = proj.trials;
  r.projection_failures = proj.failures;

  const DoubleDegree dd = check_double_degree(instance.graph, params.p, params.eta);
  r.double_degree_max = dd.max_common;
  r.double_degree_bound = dd.bound;
  r.double_degree_ok = dd.passed;

  const TrialCount ex = check_expansion(instance.graph, instance.partitions, params.p, params.delta,
                                        budgets.expansion_trials, derive_seed(budgets.seed, "verify.expansion"));
  r.expansion_trials = ex.trials;
  r.expansion_failures = ex.failures;

  r.passed = r.degrees_ok && r.spectral_ok && proj.failures == 0 && r.double_degree_ok && ex.failures == 0;
  return r;
}

}  // namespace cfree
