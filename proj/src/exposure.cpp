#include <algorithm>

#include "cfree/errors.hpp"
#include "cfree/indep.hpp"

namespace cfree {

namespace {

struct BlockHits {
  std::vector<std::uint8_t> red;
  std::vector<std::uint8_t> blue;

  BlockHits(const PartitionPair& partitions, std::span<const Vertex> J)
      : red(partitions.red.num_blocks(), 0), blue(partitions.blue.num_blocks(), 0) {
    for (Vertex j : J) {
      red[partitions.red.block_of[j]] = 1;
      blue[partitions.blue.block_of[j]] = 1;
    }
  }

  bool coupled(const PartitionPair& partitions, Edge f) const {
    const auto hit = [&](const Partition& part, const std::vector<std::uint8_t>& marks) {
      const std::uint32_t a = part.block_of[f.u], b = part.block_of[f.v];
      return a != b && marks[a] && marks[b];
    };
    return hit(partitions.red, red) || hit(partitions.blue, blue);
  }
};

}  // namespace

bool coupled_to_pairs(const PartitionPair& partitions, std::span<const Vertex> J, Edge f) {
  return BlockHits(partitions, J).coupled(partitions, f);
}

std::vector<Edge> pairs_joined_by_paths(const Adjacency& g, std::span<const Vertex> J, int len) {
  if (len < 1) throw ParameterError("path length must be positive");
  std::vector<std::uint8_t> in_j(g.size(), 0), on_path(g.size(), 0), reached(g.size(), 0);
  for (Vertex j : J) in_j.at(j) = 1;
  std::vector<Edge> out;
  for (Vertex x : J) {
    std::fill(reached.begin(), reached.end(), 0);
    on_path[x] = 1;
    auto dfs = [&](auto&& self, Vertex v, int depth) -> void {
      for (Vertex u : g[v]) {
        if (on_path[u]) continue;
        if (depth + 1 == len) {
          if (u > x && in_j[u]) reached[u] = 1;
          continue;
        }
        on_path[u] = 1;
        self(self, u, depth + 1);
        on_path[u] = 0;
      }
    };
    dfs(dfs, x, 0);
    on_path[x] = 0;
    for (Vertex y : J) {
      if (reached[y]) out.push_back(make_edge(x, y));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExposureSplit exposure_split(const ColoredGraph& graph, const PartitionPair& partitions, std::span<const Vertex> J,
                             int ell, Color color) {
  const BlockHits hits(partitions, J);
  ExposureSplit out;
  out.G0.assign(graph.n(), {});
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (!graph.alive(v)) continue;
    for (Color c : {Color::red, Color::blue}) {
      for (Vertex u : graph.neighbors(c, v)) {
        if (u <= v || !graph.alive(u)) continue;
        if (c == color && hits.coupled(partitions, Edge{v, u})) continue;
        out.G0[v].push_back(u);
        out.G0[u].push_back(v);
      }
    }
  }
  normalize(out.G0);
  const std::vector<Edge> joined = pairs_joined_by_paths(out.G0, J, ell - 1);
  std::vector<Vertex> sorted(J.begin(), J.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      const Edge e{sorted[i], sorted[j]};
      if (std::binary_search(joined.begin(), joined.end(), e)) out.closed.push_back(e);
      else out.open.push_back(e);
    }
  }
  return out;
}

ClaimVerdict check_claim(const ColoredGraph& g_prime, const ColoredGraph& final_graph, const Orderings& orderings,
                         std::span<const Vertex> J, const ExposureSplit& split, Color color) {
  ClaimVerdict out;
  out.antecedent = true;
  for (std::size_t i = 0; i < J.size() && out.antecedent; ++i) {
    if (!final_graph.alive(J[i])) out.antecedent = false;
    for (std::size_t j = i + 1; j < J.size() && out.antecedent; ++j) {
      if (final_graph.has(color, J[i], J[j])) out.antecedent = false;
    }
  }
  for (const Edge& e : split.open) {
    if (g_prime.has(color, e.u, e.v)) out.open_exposed.push_back(e);
  }
  const EdgeOrdering& order = orderings.of(color);
  if (out.antecedent && !out.open_exposed.empty()) {
    out.counterexample = *std::min_element(out.open_exposed.begin(), out.open_exposed.end(),
                                           [&](Edge a, Edge b) { return order.rank(a) < order.rank(b); });
    out.holds = false;
  }
  return out;
}

}  // namespace cfree
