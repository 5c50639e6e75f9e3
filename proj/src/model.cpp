#include "cfree/model.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "cfree/errors.hpp"

namespace cfree {

Partition sample_partition(std::uint32_t n, std::uint32_t r, Seed seed) {
  if (r == 0 || n % r != 0) {
    throw ParameterError("block size " + std::to_string(r) + " does not divide n = " + std::to_string(n));
  }
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  Rng rng(seed);
  rng.shuffle(std::span<Vertex>(order));
  std::vector<std::vector<Vertex>> blocks(n / r);
  for (std::uint32_t b = 0; b < blocks.size(); ++b) {
    blocks[b].assign(order.begin() + static_cast<std::ptrdiff_t>(b) * r,
                     order.begin() + static_cast<std::ptrdiff_t>(b + 1) * r);
  }
  return Partition::from_blocks(n, r, std::move(blocks));
}

BaseGraph sample_base_graph(std::uint32_t m, double p, Seed seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("edge probability must lie in [0, 1]");
  BaseGraph g;
  g.m = m;
  g.adj.assign(m, {});
  Rng rng(seed);
  for (Vertex a = 0; a < m; ++a) {
    for (Vertex b = a + 1; b < m; ++b) {
      if (rng.bernoulli(p)) {
        g.adj[a].push_back(b);
        g.adj[b].push_back(a);
      }
    }
  }
  return g;
}

Adjacency blow_up(const BaseGraph& base, const Partition& blocks) {
  if (base.m != blocks.num_blocks()) {
    throw ParameterError("base graph has " + std::to_string(base.m) + " vertices but partition has " +
                         std::to_string(blocks.num_blocks()) + " blocks");
  }
  Adjacency out(blocks.n());
  for (Vertex v = 0; v < blocks.n(); ++v) {
    auto& row = out[v];
    const auto& nbr_blocks = base.adj[blocks.block_of[v]];
    row.reserve(nbr_blocks.size() * blocks.r);
    for (Vertex b : nbr_blocks) {
      const auto& members = blocks.blocks[b];
      row.insert(row.end(), members.begin(), members.end());
    }
    std::sort(row.begin(), row.end());
  }
  return out;
}

ColoredGraph superimpose(Adjacency red, Adjacency blue, const PartitionPair& partitions) {
  if (red.size() != partitions.red.n() || blue.size() != partitions.blue.n()) {
    throw ParameterError("edge relations and partitions disagree on n");
  }
  return ColoredGraph(std::move(red), std::move(blue));
}

std::optional<std::uint64_t> block_pair(const Partition& part, Vertex u, Vertex v) {
  std::uint64_t a = part.block_of[u];
  std::uint64_t b = part.block_of[v];
  if (a == b) return std::nullopt;
  if (a > b) std::swap(a, b);
  return a * part.num_blocks() + b;
}

bool is_simple(std::span<const Edge> edges, const PartitionPair& partitions) {
  std::vector<std::uint64_t> red, blue;
  red.reserve(edges.size());
  blue.reserve(edges.size());
  for (const Edge& e : edges) {
    if (auto k = block_pair(partitions.red, e.u, e.v)) red.push_back(*k);
    if (auto k = block_pair(partitions.blue, e.u, e.v)) blue.push_back(*k);
  }
  auto distinct = [](std::vector<std::uint64_t>& keys) {
    std::sort(keys.begin(), keys.end());
    return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
  };
  return distinct(red) && distinct(blue);
}

bool coupled(const PartitionPair& partitions, Edge e, Edge f) {
  for (const Partition* part : {&partitions.red, &partitions.blue}) {
    auto a = block_pair(*part, e.u, e.v);
    auto b = block_pair(*part, f.u, f.v);
    if (a && b && *a == *b) return true;
  }
  return false;
}

BaseGraph contract(const Adjacency& blown_up, const Partition& blocks) {
  BaseGraph g;
  g.m = blocks.num_blocks();
  g.adj.assign(g.m, {});
  for (std::uint32_t b = 0; b < g.m; ++b) {
    const Vertex rep = blocks.blocks[b].front();
    for (Vertex v : blown_up[rep]) {
      const std::uint32_t c = blocks.block_of[v];
      g.adj[b].push_back(c);
    }
  }
  normalize(g.adj);
  return g;
}

Instance assemble_instance(const Params& params, Seed seed, BaseGraph red_base, BaseGraph blue_base,
                           PartitionPair partitions) {
  Instance inst;
  inst.params = params;
  inst.seed = seed;
  Adjacency red = blow_up(red_base, partitions.red);
  Adjacency blue = blow_up(blue_base, partitions.blue);
  inst.graph = superimpose(std::move(red), std::move(blue), partitions);
  inst.red_base = std::move(red_base);
  inst.blue_base = std::move(blue_base);
  inst.partitions = std::move(partitions);
  return inst;
}

Instance sample_instance(const Params& params, Seed seed) {
  validate(params);
  const auto n = static_cast<std::uint32_t>(params.n);
  const auto r = static_cast<std::uint32_t>(params.r);
  PartitionPair parts{sample_partition(n, r, derive_seed(seed, "partition.red")),
                      sample_partition(n, r, derive_seed(seed, "partition.blue"))};
  BaseGraph red = sample_base_graph(n / r, params.p, derive_seed(seed, "base.red"));
  BaseGraph blue = sample_base_graph(n / r, params.p, derive_seed(seed, "base.blue"));
  return assemble_instance(params, seed, std::move(red), std::move(blue), std::move(parts));
}

}  // namespace cfree
