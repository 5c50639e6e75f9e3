#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfree/broken_cycles.hpp"
#include "cfree/cycles.hpp"
#include "cfree/graph.hpp"

namespace cfree {

// Total order on all C(n,2) vertex pairs, evaluated on demand. Pairs are
// grouped by block pair (i < j, lexicographic), lexicographic by (min, max)
// inside a group; pairs within one block come last, grouped by block.
class EdgeOrdering {
 public:
  EdgeOrdering() = default;
  explicit EdgeOrdering(const Partition& partition);

  // 1-based rank in {1, ..., C(n,2)}.
  std::uint64_t rank(Edge e) const;
  std::uint64_t size() const;

 private:
  Partition part_;
};

struct Orderings {
  EdgeOrdering red;
  EdgeOrdering blue;

  const EdgeOrdering& of(Color c) const { return c == Color::red ? red : blue; }
};

// The orderings depend on the partitions only.
Orderings build_orderings(const PartitionPair& partitions);

enum class ApexClass : std::uint8_t { mono_red, mono_blue, red_apex, blue_apex };

const char* to_string(ApexClass c);

struct ApexInfo {
  Vertex apex = 0;
  ApexClass classification = ApexClass::mono_red;
  std::vector<Color> coloring;  // coloring[i] colors the step x_i -> x_{i+1}
};

// Apex of an odd cycle under one single-color assignment of its edges.
ApexInfo find_apex(std::span<const Vertex> cycle, std::span<const Color> coloring);

// One ApexInfo per coloring consistent with the color sets in the graph;
// bicolored edges branch.
std::vector<ApexInfo> find_apexes(std::span<const Vertex> cycle, const ColoredGraph& graph);

Edge select_deletion_edge(std::span<const Vertex> cycle, const ApexInfo& info, const Orderings& orderings);

struct EdgeDeletion {
  ColoredGraph graph;  // G
  std::uint64_t cycles_found = 0;
  std::uint64_t colorings_processed = 0;
  std::uint64_t edges_deleted = 0;
};

// One pass over every C_ell of g_hat; the union of the selected edges is
// removed from both colors. Throws EnumerationCapExceeded on overflow.
EdgeDeletion edge_delete(const ColoredGraph& g_hat, const Orderings& orderings, int ell,
                         std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace cfree
