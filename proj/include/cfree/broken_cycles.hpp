#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "cfree/cycles.hpp"
#include "cfree/graph.hpp"

namespace cfree {

enum class EdgeKind : std::uint8_t { actual = 0, broken = 1 };

// Cyclic sequence x_0 .. x_{t-1} of distinct vertices. kinds[i] labels the
// step x_i -> x_{i+1 mod t}: actual steps are edges of G', broken steps join
// two vertices of one red or one blue block. The label is part of the cycle,
// so a pair that is both an edge and a block pair may be used either way.
struct BrokenCycle {
  std::vector<Vertex> vertices;
  std::vector<EdgeKind> kinds;

  std::size_t length() const { return vertices.size(); }
  std::size_t actual_count() const;
  std::vector<Edge> actual_edges() const;

  friend bool operator==(const BrokenCycle&, const BrokenCycle&) = default;
};

struct PartitionPair;

// Structural validity against G' and the partitions (distinct vertices,
// t >= 2, every step legal for its kind, at least one actual step).
bool is_valid(const BrokenCycle& cycle, const ColoredGraph& graph, const PartitionPair& partitions);
// The actual edges form a simple graph.
bool is_simple(const BrokenCycle& cycle, const PartitionPair& partitions);

struct BrokenCycleView {
  std::span<const Vertex> vertices;
  std::span<const EdgeKind> kinds;
  int actual = 0;
};

using BrokenCycleVisitor = std::function<bool(const BrokenCycleView&)>;

// Every simple broken cycle with 2 <= t <= ell - 1 and an odd number of
// actual steps, once each. Canonical form: x_0 is the minimum vertex; for
// t >= 3, x_1 < x_{t-1}; for t = 2 the actual step comes first.
EnumerationStats enumerate_bad_broken_cycles(const ColoredGraph& graph, const PartitionPair& partitions, int ell,
                                             const BrokenCycleVisitor& visit,
                                             std::uint64_t cap = kDefaultEnumerationCap);

struct DeletionReport {
  std::uint64_t bad_broken_cycles_found = 0;
  std::uint64_t vertices_deleted = 0;
  std::uint64_t cycles_ell_found = 0;
  std::uint64_t edges_deleted = 0;
  std::uint64_t colorings_processed = 0;
  // (t, a) -> number of bad broken cycles of length t with a actual steps.
  std::map<std::pair<int, int>, std::uint64_t> histogram;
};

struct VertexDeletion {
  ColoredGraph graph;  // G-hat: G' with the deleted vertices marked dead
  DeletionReport report;
};

// Single pass against G': every vertex of every bad broken cycle dies.
// Throws EnumerationCapExceeded on overflow.
VertexDeletion vertex_delete(const ColoredGraph& graph, const PartitionPair& partitions, int ell,
                             std::uint64_t cap = kDefaultEnumerationCap);

// Reduces a non-simple C_ell of G' (given in cyclic order) to a simple
// broken cycle with odd actual count on a subset of its vertices: splice
// kinks first, then split on coupled disjoint edge pairs. Throws
// ParameterError if the input is simple or not a cycle of G'.
BrokenCycle kink_reduce(std::span<const Vertex> cycle, const ColoredGraph& graph, const PartitionPair& partitions);

// A broken cycle in which two consecutive actual steps lie in one block
// pair; returns the index of the shared vertex, or -1.
int find_kink(const BrokenCycle& cycle, const PartitionPair& partitions);

}  // namespace cfree
