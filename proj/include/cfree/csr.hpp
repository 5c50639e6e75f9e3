#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cfree/graph.hpp"

namespace cfree {

// Compressed sorted adjacency over alive vertices, with the color set of
// every stored edge.
struct Csr {
  std::vector<std::uint32_t> offsets;
  std::vector<Vertex> targets;
  std::vector<ColorSet> colors;

  std::uint32_t n() const { return static_cast<std::uint32_t>(offsets.size() - 1); }
  std::span<const Vertex> row(Vertex v) const {
    return {targets.data() + offsets[v], targets.data() + offsets[v + 1]};
  }
  std::span<const ColorSet> row_colors(Vertex v) const {
    return {colors.data() + offsets[v], colors.data() + offsets[v + 1]};
  }

  static Csr from(const ColoredGraph& graph);
  // Plain graph; every edge gets kRedBit. alive may be empty (all alive).
  static Csr from(const Adjacency& adj, std::span<const std::uint8_t> alive = {});
};

}  // namespace cfree
