#include "cfree/graph.hpp"

#include <algorithm>
#include <string>

#include "cfree/errors.hpp"

namespace cfree {

void normalize(Adjacency& adj) {
  for (auto& row : adj) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

std::size_t edge_count(const Adjacency& adj) {
  std::size_t twice = 0;
  for (const auto& row : adj) twice += row.size();
  return twice / 2;
}

bool adjacent(const Adjacency& adj, Vertex u, Vertex v) {
  const auto& row = adj[u];
  return std::binary_search(row.begin(), row.end(), v);
}

void add_edge(Adjacency& adj, Vertex u, Vertex v) {
  auto insert = [](std::vector<Vertex>& row, Vertex x) {
    auto it = std::lower_bound(row.begin(), row.end(), x);
    if (it == row.end() || *it != x) row.insert(it, x);
  };
  insert(adj[u], v);
  insert(adj[v], u);
}

Partition Partition::from_blocks(std::uint32_t n, std::uint32_t r, std::vector<std::vector<Vertex>> blocks) {
  if (r == 0 || n % r != 0) throw ParameterError("block size must divide n");
  if (blocks.size() != n / r) {
    throw ParameterError("expected " + std::to_string(n / r) + " blocks, got " + std::to_string(blocks.size()));
  }
  Partition out;
  out.r = r;
  out.block_of.assign(n, UINT32_MAX);
  out.position.assign(n, 0);
  for (std::uint32_t b = 0; b < blocks.size(); ++b) {
    auto& block = blocks[b];
    if (block.size() != r) {
      throw ParameterError("block " + std::to_string(b) + " has size " + std::to_string(block.size()) +
                           ", expected " + std::to_string(r));
    }
    std::sort(block.begin(), block.end());
    for (std::uint32_t i = 0; i < block.size(); ++i) {
      const Vertex v = block[i];
      if (v >= n) throw ParameterError("vertex " + std::to_string(v) + " out of range");
      if (out.block_of[v] != UINT32_MAX) throw ParameterError("vertex " + std::to_string(v) + " in two blocks");
      out.block_of[v] = b;
      out.position[v] = i;
    }
  }
  out.blocks = std::move(blocks);
  return out;
}

ColoredGraph::ColoredGraph(std::uint32_t n) : red_(n), blue_(n), alive_(n, 1) {}

ColoredGraph::ColoredGraph(Adjacency red, Adjacency blue)
    : red_(std::move(red)), blue_(std::move(blue)), alive_(red_.size(), 1) {
  if (red_.size() != blue_.size()) throw ParameterError("red and blue graphs differ in vertex count");
  normalize(red_);
  normalize(blue_);
}

ColorSet ColoredGraph::colors(Vertex u, Vertex v) const {
  ColorSet s = 0;
  if (adjacent(red_, u, v)) s |= kRedBit;
  if (adjacent(blue_, u, v)) s |= kBlueBit;
  return s;
}

void ColoredGraph::set_alive_mask(std::vector<std::uint8_t> mask) {
  if (mask.size() != alive_.size()) throw ParameterError("alive mask size mismatch");
  alive_ = std::move(mask);
}

std::uint32_t ColoredGraph::alive_count() const {
  return static_cast<std::uint32_t>(std::count_if(alive_.begin(), alive_.end(), [](auto a) { return a != 0; }));
}

void ColoredGraph::add(Color c, Vertex u, Vertex v) {
  if (u == v) throw ParameterError("loops are not allowed");
  add_edge(c == Color::red ? red_ : blue_, u, v);
}

void ColoredGraph::remove_edge(Edge e) {
  auto erase = [](std::vector<Vertex>& row, Vertex x) {
    auto it = std::lower_bound(row.begin(), row.end(), x);
    if (it != row.end() && *it == x) row.erase(it);
  };
  for (Adjacency* adj : {&red_, &blue_}) {
    erase((*adj)[e.u], e.v);
    erase((*adj)[e.v], e.u);
  }
}

std::vector<Edge> ColoredGraph::edges(Color c) const {
  std::vector<Edge> out;
  const Adjacency& adj = adjacency(c);
  for (Vertex u = 0; u < n(); ++u) {
    if (!alive(u)) continue;
    for (Vertex v : adj[u]) {
      if (v > u && alive(v)) out.push_back({u, v});
    }
  }
  return out;
}

std::vector<Edge> ColoredGraph::union_edges() const {
  std::vector<Edge> out;
  const Adjacency uni = union_adjacency();
  for (Vertex u = 0; u < n(); ++u) {
    for (Vertex v : uni[u]) {
      if (v > u) out.push_back({u, v});
    }
  }
  return out;
}

Adjacency ColoredGraph::union_adjacency() const {
  Adjacency out(n());
  for (Vertex u = 0; u < n(); ++u) {
    if (!alive(u)) continue;
    auto& row = out[u];
    row.reserve(red_[u].size() + blue_[u].size());
    std::set_union(red_[u].begin(), red_[u].end(), blue_[u].begin(), blue_[u].end(), std::back_inserter(row));
    std::erase_if(row, [&](Vertex v) { return !alive(v); });
  }
  return out;
}

std::uint32_t ColoredGraph::union_degree(Vertex v) const {
  if (!alive(v)) return 0;
  const auto& a = red_[v];
  const auto& b = blue_[v];
  std::uint32_t count = 0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    Vertex next;
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      next = a[i++];
    } else if (i == a.size() || b[j] < a[i]) {
      next = b[j++];
    } else {
      next = a[i++];
      ++j;
    }
    if (alive(next)) ++count;
  }
  return count;
}

}  // namespace cfree
