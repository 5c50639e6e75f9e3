#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "cfree/graph.hpp"
#include "cfree/params.hpp"
#include "cfree/rng.hpp"

namespace cfree {

// Uniform partition of [n] into n/r blocks of size r: a seeded shuffle of
// [n] cut into consecutive runs.
Partition sample_partition(std::uint32_t n, std::uint32_t r, Seed seed);

// G(m, p): every pair independently with probability p.
BaseGraph sample_base_graph(std::uint32_t m, double p, Seed seed);

// r-blow-up of base along the blocks: u ~ v iff their blocks are distinct
// and adjacent in base.
Adjacency blow_up(const BaseGraph& base, const Partition& blocks);

ColoredGraph superimpose(Adjacency red, Adjacency blue, const PartitionPair& partitions);

// Unordered block pair {i, j}, i < j, encoded as i * blocks + j. Empty when
// both endpoints share a block.
std::optional<std::uint64_t> block_pair(const Partition& part, Vertex u, Vertex v);

// At most one edge of H in every V_i x V_j and in every W_i x W_j.
bool is_simple(std::span<const Edge> edges, const PartitionPair& partitions);

// Whether two edges lie in one red block pair or one blue block pair.
bool coupled(const PartitionPair& partitions, Edge e, Edge f);

// Recovers the base graph from a blow-up that still has every vertex.
BaseGraph contract(const Adjacency& blown_up, const Partition& blocks);

struct Instance {
  Params params;
  Seed seed = 0;
  BaseGraph red_base;
  BaseGraph blue_base;
  PartitionPair partitions;
  ColoredGraph graph;  // G'
};

// Stage seeds: "partition.red", "partition.blue", "base.red", "base.blue".
Instance sample_instance(const Params& params, Seed seed);

// Builds an instance from given pieces (used by loaders and hand-built tests).
Instance assemble_instance(const Params& params, Seed seed, BaseGraph red_base, BaseGraph blue_base,
                           PartitionPair partitions);

}  // namespace cfree
