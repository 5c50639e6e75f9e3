#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/distributions/binomial.hpp>
#include <cmath>
#include <numeric>

#include "cfree/model.hpp"
#include "cfree/pseudo.hpp"

using namespace cfree;

namespace {

BaseGraph complete(std::uint32_t m) {
  BaseGraph g;
  g.m = m;
  g.adj.assign(m, {});
  for (Vertex a = 0; a < m; ++a) {
    for (Vertex b = 0; b < m; ++b) {
      if (a != b) g.adj[a].push_back(b);
    }
  }
  return g;
}

BaseGraph empty(std::uint32_t m) {
  BaseGraph g;
  g.m = m;
  g.adj.assign(m, {});
  return g;
}

Params operational(std::uint64_t n, std::uint64_t r, double p) {
  ParamOverrides o;
  o.p = p, o.r = r, o.k = n / 10, o.delta = 1.0 / std::log(double(n));
  return derive_params(5, n, Mode::operational, o);
}

}  // namespace

TEST_CASE("degree check extremes") {
  const DegreeCheck full = check_degrees(complete(20), 1.0, 0.01);
  CHECK(full.deviation == 0.0);
  CHECK(full.passed);
  const DegreeCheck none = check_degrees(empty(20), 0.5, 0.5);
  CHECK(none.deviation == 1.0);
  CHECK_FALSE(none.passed);
}

TEST_CASE("degree check pass rate agrees with the binomial model") {
  // G(2000, 0.05) at the 4 sigma tolerance. Each degree is Bin(m-1, p); the
  // pass probability of all m vertices is close to q^m with q the per-vertex
  // probability, which is far below 0.95 here.
  const std::uint32_t m = 2000;
  const double p = 0.05;
  const double tol = default_degree_tolerance(p, m);
  const boost::math::binomial_distribution<double> bin(m - 1, p);
  const double mean = p * (m - 1);
  const double lo = std::ceil(mean * (1 - tol) - 1e-9), hi = std::floor(mean * (1 + tol) + 1e-9);
  const double q = boost::math::cdf(bin, hi) - (lo > 0 ? boost::math::cdf(bin, lo - 1) : 0.0);
  const double rate = std::pow(q, m);
  int passed = 0;
  const int seeds = 100;
  for (int s = 0; s < seeds; ++s) passed += check_degrees(sample_base_graph(m, p, derive_seed(3, "deg", s)), p, tol).passed;
  MESSAGE("4-sigma pass rate: observed " << passed << "/100, model " << rate * 100);
  CHECK(std::abs(passed - seeds * rate) <= 3 * std::sqrt(seeds * rate * (1 - rate)) + 1);
  // With a union-bound tolerance the whole-graph check passes almost surely.
  const double union_tol = std::sqrt(2 * std::log(2.0 * m * 20) * (1 - p) / (p * m));
  int union_passed = 0;
  for (int s = 0; s < seeds; ++s) {
    union_passed += check_degrees(sample_base_graph(m, p, derive_seed(3, "deg", s)), p, union_tol).passed;
  }
  CHECK(union_passed >= 95);
}

TEST_CASE("spectral deviation extremes") {
  const SpectralDeviation full = spectral_deviation(complete(30), 1.0);
  CHECK(full.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(spectral_deviation(empty(30), 0.0).value == 0.0);
}

TEST_CASE("spectral deviation matches the dense cross-check") {
  for (int s = 0; s < 10; ++s) {
    const std::uint32_t m = 50 + 15 * s;
    const BaseGraph g = sample_base_graph(m, 0.1, derive_seed(4, "sd", s));
    const SpectralDeviation d = spectral_deviation(g, 0.1, 1e-6, 10000, s);
    REQUIRE(d.dense_value.has_value());
    CHECK(d.value == doctest::Approx(*d.dense_value).epsilon(1e-6));
    CHECK(d.residual <= 1e-6 * d.value);
  }
}

TEST_CASE("spectral deviation is invariant under relabeling and bounded below by a row") {
  const std::uint32_t m = 120;
  const double p = 0.08;
  const BaseGraph g = sample_base_graph(m, p, 77);
  std::vector<Vertex> perm(m);
  std::iota(perm.begin(), perm.end(), 0u);
  Rng rng(5);
  rng.shuffle(std::span(perm));
  BaseGraph h;
  h.m = m;
  h.adj.assign(m, {});
  for (Vertex a = 0; a < m; ++a) {
    for (Vertex b : g.adj[a]) h.adj[perm[a]].push_back(perm[b]);
  }
  normalize(h.adj);
  const double a = spectral_deviation(g, p, 1e-9).value;
  const double b = spectral_deviation(h, p, 1e-9).value;
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
  double worst = 0;
  for (Vertex v = 0; v < m; ++v) worst = std::max(worst, std::abs(double(g.degree(v)) - p * m));
  CHECK(a >= worst / std::sqrt(double(m)) - 1e-9);
}

TEST_CASE("projection checks") {
  const PartitionPair parts{sample_partition(60, 3, 1), sample_partition(60, 3, 2)};
  // t = 1 is never a failure: cap k at 1.
  CHECK(check_projections(parts, 1.0, 1, 500, 3).failures == 0);
  // Forced-equal partitions: a union of two blocks has projections 2 < 6.
  const PartitionPair same{parts.red, parts.red};
  CHECK(check_projections(same, 1.0, 6, 300, 4).failures > 0);
  const PartitionPair tiny_same{sample_partition(12, 3, 5), sample_partition(12, 3, 5)};
  CHECK(check_projections_exhaustive(tiny_same, 1.0, 6).failures > 0);
}

TEST_CASE("sampled projection check agrees with the exhaustive mode") {
  for (int s = 0; s < 20; ++s) {
    const PartitionPair parts{sample_partition(16, 2, derive_seed(6, "r", s)), sample_partition(16, 2, derive_seed(6, "b", s))};
    for (double delta : {0.3, 0.5, 0.6}) {
      const TrialCount ex = check_projections_exhaustive(parts, delta, 8);
      const TrialCount sm = check_projections(parts, delta, 8, 400, s);
      if (ex.failures == 0) CHECK(sm.failures == 0);
      CHECK(sm.failures <= sm.trials);
    }
  }
}

TEST_CASE("a full red block keeps its blue projection at n = 5000, r = 5") {
  const double delta = 1.0 / std::log(5000.0);
  int ok = 0;
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    const Partition red = sample_partition(5000, 5, derive_seed(7, "r", s));
    const Partition blue = sample_partition(5000, 5, derive_seed(7, "b", s));
    std::vector<std::uint32_t> bl;
    for (Vertex v : red.blocks[0]) bl.push_back(blue.block_of[v]);
    std::sort(bl.begin(), bl.end());
    const auto distinct = std::unique(bl.begin(), bl.end()) - bl.begin();
    ok += distinct >= delta * 5;
  }
  CHECK(ok == trials);
}

TEST_CASE("double degree check") {
  const Partition p = sample_partition(40, 4, 1);
  const PartitionPair parts{p, p};
  const BaseGraph base = sample_base_graph(10, 0.4, 2);
  const ColoredGraph same = superimpose(blow_up(base, p), blow_up(base, p), parts);
  std::size_t maxdeg = 0;
  for (Vertex v = 0; v < 40; ++v) maxdeg = std::max(maxdeg, same.neighbors(Color::red, v).size());
  CHECK(check_double_degree(same, 0.4, 0.05).max_common == maxdeg);
  ColoredGraph disjoint(6);
  disjoint.add(Color::red, 0, 1);
  disjoint.add(Color::blue, 2, 3);
  CHECK(check_double_degree(disjoint, 0.5, 0.05).max_common == 0);
}

TEST_CASE("expansion checks") {
  // Isolated red block: a 4-vertex red clique on one block, no other edges.
  ColoredGraph g(12);
  g.add(Color::red, 0, 1);
  const Partition p = Partition::from_blocks(12, 2, {{0, 2}, {1, 3}, {4, 5}, {6, 7}, {8, 9}, {10, 11}});
  const PartitionPair parts{p, p};
  CHECK(check_expansion(g, parts, 0.1, 0.5, 200, 1).failures > 0);
  CHECK(check_expansion_exhaustive(g, 0.1, 0.5).failures > 0);

  // |S| = 1: the boundary is the degree.
  const Params params = operational(400, 4, 0.2);
  const Instance inst = sample_instance(params, 3);
  const TrialCount singles = check_expansion(inst.graph, inst.partitions, 0.5, params.delta, 300, 2);
  CHECK(singles.trials == 300);
}

TEST_CASE("sampled expansion agrees with the exhaustive mode") {
  for (int s = 0; s < 10; ++s) {
    ParamOverrides o;
    o.p = 0.5, o.r = 2, o.k = 3, o.delta = 0.5;
    const Instance inst = sample_instance(derive_params(5, 16, Mode::operational, o), derive_seed(8, "x", s));
    for (double delta : {0.5, 1.0, 2.0}) {
      const TrialCount ex = check_expansion_exhaustive(inst.graph, 0.2, delta);
      const TrialCount sm = check_expansion(inst.graph, inst.partitions, 0.2, delta, 300, s);
      if (ex.failures == 0) CHECK(sm.failures == 0);
    }
  }
}

TEST_CASE("operational instances at n = 5000, r = 5, p = 0.02") {
  const Params params = operational(5000, 5, 0.02);
  int double_ok = 0, expansion_ok = 0;
  for (int s = 0; s < 100; ++s) {
    const Instance inst = sample_instance(params, derive_seed(9, "op", s));
    double_ok += check_double_degree(inst.graph, params.p, params.eta).passed;
    expansion_ok +=
        check_expansion(inst.graph, inst.partitions, params.p, params.delta, 1000, derive_seed(9, "ex", s)).failures == 0;
  }
  CHECK(double_ok >= 95);
  CHECK(expansion_ok >= 95);
}

TEST_CASE("verify_A aggregates its sub-checks") {
  const Params params = operational(1000, 5, 0.05);
  const Instance inst = sample_instance(params, 1);
  VerifyBudgets b;
  b.projection_trials = 200;
  b.expansion_trials = 200;
  const VerifierReport r = verify_A(inst, b);
  CHECK(r.degree_dev_red == check_degrees(inst.red_base, params.p, r.degree_tol).deviation);
  CHECK(r.double_degree_max == check_double_degree(inst.graph, params.p, params.eta).max_common);
  CHECK(r.spectral_bound == doctest::Approx(3 * std::sqrt(0.05 * 200)));
  CHECK(r.passed == (r.degrees_ok && r.spectral_ok && r.projection_failures == 0 && r.double_degree_ok &&
                     r.expansion_failures == 0));
  b.degree_tol = 0.0;
  CHECK_FALSE(verify_A(inst, b).passed);
}
