#include <algorithm>
#include <optional>
#include <string>

#include "cfree/broken_cycles.hpp"
#include "cfree/errors.hpp"
#include "cfree/model.hpp"

namespace cfree {

namespace {

bool same_pair(const PartitionPair& parts, Edge e, Edge f) { return coupled(parts, e, f); }

Edge step_edge(const BrokenCycle& c, std::size_t i) {
  return make_edge(c.vertices[i], c.vertices[(i + 1) % c.vertices.size()]);
}

void splice(BrokenCycle& c, std::size_t i) {
  const std::size_t t = c.vertices.size();
  const std::size_t prev = (i + t - 1) % t;
  c.kinds[prev] = EdgeKind::broken;
  c.vertices.erase(c.vertices.begin() + static_cast<std::ptrdiff_t>(i));
  c.kinds.erase(c.kinds.begin() + static_cast<std::ptrdiff_t>(i));
}

// Broken cycle on the arc from position s forward to position e, closed by a
// broken step e -> s.
BrokenCycle arc_cycle(const BrokenCycle& c, std::size_t s, std::size_t e) {
  const std::size_t t = c.vertices.size();
  BrokenCycle out;
  for (std::size_t i = s;; i = (i + 1) % t) {
    out.vertices.push_back(c.vertices[i]);
    if (i == e) break;
    out.kinds.push_back(c.kinds[i]);
  }
  out.kinds.push_back(EdgeKind::broken);
  return out;
}

std::optional<std::size_t> position_of(const BrokenCycle& c, Vertex v) {
  auto it = std::find(c.vertices.begin(), c.vertices.end(), v);
  if (it == c.vertices.end()) return std::nullopt;
  return static_cast<std::size_t>(it - c.vertices.begin());
}

// One induction step on a kink-free, non-simple broken cycle.
BrokenCycle split(const BrokenCycle& c, const PartitionPair& parts) {
  const std::size_t t = c.vertices.size();
  const std::size_t a = c.actual_count();
  for (std::size_t i = 0; i < t; ++i) {
    if (c.kinds[i] != EdgeKind::actual) continue;
    for (std::size_t j = i + 1; j < t; ++j) {
      if (c.kinds[j] != EdgeKind::actual) continue;
      const Edge e = step_edge(c, i);
      const Edge f = step_edge(c, j);
      if (!same_pair(parts, e, f)) continue;
      // Match endpoints of e and f that share a block on either side.
      for (const Partition* part : {&parts.red, &parts.blue}) {
        for (Vertex x : {e.u, e.v}) {
          for (Vertex y : {f.u, f.v}) {
            if (x == y || !part->same_block(x, y)) continue;
            const std::size_t px = *position_of(c, x);
            const std::size_t py = *position_of(c, y);
            for (auto [s, en] : {std::pair{px, py}, std::pair{py, px}}) {
              BrokenCycle candidate = arc_cycle(c, s, en);
              const std::size_t ca = candidate.actual_count();
              if (ca % 2 == 1 && ca < a) return candidate;
            }
          }
        }
      }
    }
  }
  throw std::logic_error("kink_reduce: no odd sub-cycle found");
}

}  // namespace

int find_kink(const BrokenCycle& c, const PartitionPair& parts) {
  const std::size_t t = c.vertices.size();
  if (t < 3) return -1;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t prev = (i + t - 1) % t;
    if (c.kinds[prev] != EdgeKind::actual || c.kinds[i] != EdgeKind::actual) continue;
    if (same_pair(parts, step_edge(c, prev), step_edge(c, i))) return static_cast<int>(i);
  }
  return -1;
}

BrokenCycle kink_reduce(std::span<const Vertex> cycle, const ColoredGraph& graph, const PartitionPair& parts) {
  BrokenCycle b;
  b.vertices.assign(cycle.begin(), cycle.end());
  b.kinds.assign(cycle.size(), EdgeKind::actual);
  if (cycle.size() < 3 || cycle.size() % 2 == 0) throw ParameterError("kink_reduce needs an odd cycle");
  if (!is_valid(b, graph, parts)) throw ParameterError("kink_reduce input is not a cycle of G'");
  if (is_simple(b, parts)) throw ParameterError("kink_reduce input is already simple");

  for (;;) {
    for (int i = find_kink(b, parts); i >= 0; i = find_kink(b, parts)) splice(b, static_cast<std::size_t>(i));
    if (is_simple(b, parts)) return b;
    b = split(b, parts);
  }
}

}  // namespace cfree
