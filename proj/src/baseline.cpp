#include <algorithm>
#include <cmath>

#include "cfree/errors.hpp"
#include "cfree/indep.hpp"
#include "cfree/model.hpp"

namespace cfree {

Baseline baseline_construction(std::uint32_t n, int ell, Seed seed, std::uint64_t cap) {
  if (ell < 3) throw ParameterError("baseline needs ell >= 3");
  Baseline out;
  out.p = 0.5 * std::pow(static_cast<double>(n), -1.0 + 1.0 / (ell - 1));
  BaseGraph g = sample_base_graph(n, out.p, derive_seed(seed, "baseline.graph"));
  out.edges_sampled = g.edge_count();
  const Csr csr = Csr::from(g.adj);
  std::vector<Edge> doomed;
  const EnumerationStats stats = enumerate_cycles(
      csr, ell,
      [&](std::span<const Vertex> cycle) {
        ++out.cycles_found;
        Edge largest{};
        for (std::size_t i = 0; i < cycle.size(); ++i) {
          largest = std::max(largest, make_edge(cycle[i], cycle[(i + 1) % cycle.size()]));
        }
        doomed.push_back(largest);
        return true;
      },
      cap);
  if (stats.overflow) throw EnumerationCapExceeded("baseline: more than " + std::to_string(cap) + " cycles");
  std::sort(doomed.begin(), doomed.end());
  doomed.erase(std::unique(doomed.begin(), doomed.end()), doomed.end());
  for (const Edge& e : doomed) {
    auto& a = g.adj[e.u];
    a.erase(std::lower_bound(a.begin(), a.end(), e.v));
    auto& b = g.adj[e.v];
    b.erase(std::lower_bound(b.begin(), b.end(), e.u));
  }
  out.edges_removed = doomed.size();
  out.graph = std::move(g.adj);
  return out;
}

double expected_cycle_count(std::uint32_t n, int ell, double p) {
  double falling = 1.0;
  for (int i = 0; i < ell; ++i) falling *= static_cast<double>(n) - i;
  return falling * std::pow(p, ell) / (2.0 * ell);
}

IndSetBound ind_set_probability_bound(const Params& params) {
  IndSetBound out;
  const double dk = params.delta * static_cast<double>(params.k);
  const double n = static_cast<double>(params.n);
  const double k = static_cast<double>(params.k);
  out.log_probability = dk * dk / 4.0 * std::log1p(-params.p);
  const double log_choose = std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
  out.log_expectation = log_choose + out.log_probability;
  out.log_upper = k * (std::log(n) - params.p * params.delta * params.delta * k / 4.0);
  return out;
}

}  // namespace cfree
