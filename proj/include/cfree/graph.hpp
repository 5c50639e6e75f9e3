#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace cfree {

using Vertex = std::uint32_t;
using Adjacency = std::vector<std::vector<Vertex>>;

enum class Color : std::uint8_t { red = 0, blue = 1 };

inline constexpr Color other(Color c) { return c == Color::red ? Color::blue : Color::red; }

// Bit mask over {red, blue}.
using ColorSet = std::uint8_t;
inline constexpr ColorSet kRedBit = 1;
inline constexpr ColorSet kBlueBit = 2;
inline constexpr ColorSet bit(Color c) { return c == Color::red ? kRedBit : kBlueBit; }

struct Edge {
  Vertex u = 0;
  Vertex v = 0;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Normalized so that u < v.
inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Sorts every row and removes duplicates.
void normalize(Adjacency& adj);
std::size_t edge_count(const Adjacency& adj);
bool adjacent(const Adjacency& adj, Vertex u, Vertex v);
void add_edge(Adjacency& adj, Vertex u, Vertex v);

// Base graph on m = n / r vertices.
struct BaseGraph {
  std::uint32_t m = 0;
  Adjacency adj;

  std::size_t edge_count() const { return cfree::edge_count(adj); }
  bool has_edge(Vertex a, Vertex b) const { return adjacent(adj, a, b); }
  std::uint32_t degree(Vertex a) const { return static_cast<std::uint32_t>(adj[a].size()); }
};

// Partition of [n] into n / r blocks of exactly r vertices; blocks are sorted.
struct Partition {
  std::uint32_t r = 1;
  std::vector<std::vector<Vertex>> blocks;
  std::vector<std::uint32_t> block_of;
  std::vector<std::uint32_t> position;  // index of the vertex inside its block

  std::uint32_t n() const { return static_cast<std::uint32_t>(block_of.size()); }
  std::uint32_t num_blocks() const { return static_cast<std::uint32_t>(blocks.size()); }
  bool same_block(Vertex a, Vertex b) const { return block_of[a] == block_of[b]; }

  // Builds block_of / position from blocks and checks the partition
  // invariants; throws ParameterError.
  static Partition from_blocks(std::uint32_t n, std::uint32_t r, std::vector<std::vector<Vertex>> blocks);
};

struct PartitionPair {
  Partition red;
  Partition blue;

  const Partition& of(Color c) const { return c == Color::red ? red : blue; }
};

// Superimposed graph G' = G'_R u G'_B with separate per-color adjacency and
// an alive mask. Deleted vertices keep their rows; every algorithm skips
// them through alive().
class ColoredGraph {
 public:
  ColoredGraph() = default;
  explicit ColoredGraph(std::uint32_t n);
  ColoredGraph(Adjacency red, Adjacency blue);

  std::uint32_t n() const { return static_cast<std::uint32_t>(alive_.size()); }

  std::span<const Vertex> neighbors(Color c, Vertex v) const {
    return c == Color::red ? std::span<const Vertex>(red_[v]) : std::span<const Vertex>(blue_[v]);
  }
  const Adjacency& adjacency(Color c) const { return c == Color::red ? red_ : blue_; }

  bool has(Color c, Vertex u, Vertex v) const { return adjacent(adjacency(c), u, v); }
  ColorSet colors(Vertex u, Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const { return colors(u, v) != 0; }

  bool alive(Vertex v) const { return alive_[v] != 0; }
  const std::vector<std::uint8_t>& alive_mask() const { return alive_; }
  void set_alive_mask(std::vector<std::uint8_t> mask);
  void kill(Vertex v) { alive_[v] = 0; }
  std::uint32_t alive_count() const;

  void add(Color c, Vertex u, Vertex v);
  // Removes the edge from both color classes.
  void remove_edge(Edge e);

  // Counts ignore the alive mask.
  std::size_t edge_count(Color c) const { return cfree::edge_count(adjacency(c)); }
  // Edges of one color with both endpoints alive, sorted.
  std::vector<Edge> edges(Color c) const;
  // Union edges with both endpoints alive, sorted.
  std::vector<Edge> union_edges() const;
  // Union adjacency restricted to alive vertices (dead rows are empty).
  Adjacency union_adjacency() const;
  // Number of alive union neighbours of v.
  std::uint32_t union_degree(Vertex v) const;

 private:
  Adjacency red_;
  Adjacency blue_;
  std::vector<std::uint8_t> alive_;
};

}  // namespace cfree
