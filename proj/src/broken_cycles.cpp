#include "cfree/broken_cycles.hpp"

#include <algorithm>
#include <string>

#include "cfree/csr.hpp"
#include "cfree/errors.hpp"
#include "cfree/model.hpp"

namespace cfree {

std::size_t BrokenCycle::actual_count() const {
  return static_cast<std::size_t>(std::count(kinds.begin(), kinds.end(), EdgeKind::actual));
}

std::vector<Edge> BrokenCycle::actual_edges() const {
  std::vector<Edge> out;
  const std::size_t t = vertices.size();
  for (std::size_t i = 0; i < t; ++i) {
    if (kinds[i] == EdgeKind::actual) out.push_back(make_edge(vertices[i], vertices[(i + 1) % t]));
  }
  return out;
}

bool is_valid(const BrokenCycle& cycle, const ColoredGraph& graph, const PartitionPair& partitions) {
  const std::size_t t = cycle.vertices.size();
  if (t < 2 || cycle.kinds.size() != t) return false;
  std::vector<Vertex> sorted = cycle.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i < t; ++i) {
    const Vertex a = cycle.vertices[i];
    const Vertex b = cycle.vertices[(i + 1) % t];
    if (cycle.kinds[i] == EdgeKind::actual) {
      if (!graph.has_edge(a, b)) return false;
    } else if (!partitions.red.same_block(a, b) && !partitions.blue.same_block(a, b)) {
      return false;
    }
  }
  return cycle.actual_count() >= 1;
}

bool is_simple(const BrokenCycle& cycle, const PartitionPair& partitions) {
  const auto edges = cycle.actual_edges();
  return is_simple(std::span<const Edge>(edges), partitions);
}

namespace {

constexpr std::uint64_t kNoPair = UINT64_MAX;

class BrokenCycleSearch {
 public:
  BrokenCycleSearch(const ColoredGraph& graph, const PartitionPair& parts, int ell, const BrokenCycleVisitor& visit,
                    std::uint64_t cap)
      : graph_(graph),
        csr_(Csr::from(graph)),
        parts_(parts),
        max_t_(ell - 1),
        visit_(visit),
        cap_(cap),
        on_path_(graph.n(), 0),
        anchor_mark_(graph.n(), UINT32_MAX) {}

  EnumerationStats run() {
    for (Vertex a = 0; a < graph_.n() && !done(); ++a) {
      if (!graph_.alive(a)) continue;
      for (Vertex w : csr_.row(a)) anchor_mark_[w] = a;
      anchor_ = a;
      path_.assign(1, a);
      kinds_.clear();
      red_pairs_.clear();
      blue_pairs_.clear();
      actual_ = 0;
      on_path_[a] = 1;
      extend();
      on_path_[a] = 0;
    }
    return stats_;
  }

 private:
  bool done() const { return stats_.overflow || stats_.stopped; }

  // Pushes the block pairs of an actual edge; false if simplicity breaks.
  bool push_actual(Vertex u, Vertex v) {
    const auto rp = block_pair(parts_.red, u, v);
    const auto bp = block_pair(parts_.blue, u, v);
    if (rp && std::find(red_pairs_.begin(), red_pairs_.end(), *rp) != red_pairs_.end()) return false;
    if (bp && std::find(blue_pairs_.begin(), blue_pairs_.end(), *bp) != blue_pairs_.end()) return false;
    red_pairs_.push_back(rp.value_or(kNoPair));
    blue_pairs_.push_back(bp.value_or(kNoPair));
    ++actual_;
    return true;
  }

  void pop_actual() {
    red_pairs_.pop_back();
    blue_pairs_.pop_back();
    --actual_;
  }

  bool shares_block(Vertex u, Vertex v) const {
    return parts_.red.same_block(u, v) || parts_.blue.same_block(u, v);
  }

  // Closing step back to the anchor. For t = 2 only (actual, broken) is
  // emitted; its mirror labeling is the same cycle.
  void try_close() {
    const Vertex last = path_.back();
    const std::size_t t = path_.size();
    if (t >= 3 && path_[1] > last) return;
    if (t >= 3 && actual_ % 2 == 0 && anchor_mark_[last] == anchor_ && push_actual(last, anchor_)) {
      kinds_.push_back(EdgeKind::actual);
      emit();
      kinds_.pop_back();
      pop_actual();
    }
    if (!done() && actual_ % 2 == 1 && shares_block(last, anchor_)) {
      kinds_.push_back(EdgeKind::broken);
      emit();
      kinds_.pop_back();
    }
  }

  void step(Vertex w, EdgeKind kind) {
    path_.push_back(w);
    kinds_.push_back(kind);
    on_path_[w] = 1;
    try_close();
    if (!done() && static_cast<int>(path_.size()) < max_t_) extend();
    on_path_[w] = 0;
    kinds_.pop_back();
    path_.pop_back();
  }

  void extend() {
    const Vertex cur = path_.back();
    {
      const auto row = csr_.row(cur);
      for (auto it = std::upper_bound(row.begin(), row.end(), anchor_); it != row.end() && !done(); ++it) {
        const Vertex w = *it;
        if (on_path_[w]) continue;
        if (!push_actual(cur, w)) continue;
        step(w, EdgeKind::actual);
        pop_actual();
      }
    }
    const auto& red_block = parts_.red.blocks[parts_.red.block_of[cur]];
    for (Vertex w : red_block) {
      if (done()) return;
      if (w <= anchor_ || on_path_[w] || !graph_.alive(w)) continue;
      step(w, EdgeKind::broken);
    }
    const auto& blue_block = parts_.blue.blocks[parts_.blue.block_of[cur]];
    for (Vertex w : blue_block) {
      if (done()) return;
      if (w <= anchor_ || on_path_[w] || !graph_.alive(w) || parts_.red.same_block(cur, w)) continue;
      step(w, EdgeKind::broken);
    }
  }

  void emit() {
    if (stats_.emitted >= cap_) {
      stats_.overflow = true;
      return;
    }
    ++stats_.emitted;
    BrokenCycleView view{path_, kinds_, actual_};
    if (!visit_(view)) stats_.stopped = true;
  }

  const ColoredGraph& graph_;
  Csr csr_;
  const PartitionPair& parts_;
  int max_t_;
  const BrokenCycleVisitor& visit_;
  std::uint64_t cap_;
  std::vector<std::uint8_t> on_path_;
  std::vector<std::uint32_t> anchor_mark_;
  Vertex anchor_ = 0;
  std::vector<Vertex> path_;
  std::vector<EdgeKind> kinds_;
  std::vector<std::uint64_t> red_pairs_;
  std::vector<std::uint64_t> blue_pairs_;
  int actual_ = 0;
  EnumerationStats stats_;
};

}  // namespace

EnumerationStats enumerate_bad_broken_cycles(const ColoredGraph& graph, const PartitionPair& partitions, int ell,
                                             const BrokenCycleVisitor& visit, std::uint64_t cap) {
  if (ell < 3) throw ParameterError("cycle length must be >= 3");
  if (partitions.red.n() != graph.n() || partitions.blue.n() != graph.n()) {
    throw ParameterError("partitions and graph disagree on n");
  }
  return BrokenCycleSearch(graph, partitions, ell, visit, cap).run();
}

VertexDeletion vertex_delete(const ColoredGraph& graph, const PartitionPair& partitions, int ell,
                             std::uint64_t cap) {
  VertexDeletion out{graph, {}};
  std::vector<std::uint8_t> doomed(graph.n(), 0);
  auto& report = out.report;
  const auto stats = enumerate_bad_broken_cycles(
      graph, partitions, ell,
      [&](const BrokenCycleView& c) {
        for (Vertex v : c.vertices) doomed[v] = 1;
        ++report.histogram[{static_cast<int>(c.vertices.size()), c.actual}];
        return true;
      },
      cap);
  if (stats.overflow) {
    throw EnumerationCapExceeded("more than " + std::to_string(cap) + " bad broken cycles");
  }
  report.bad_broken_cycles_found = stats.emitted;
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (doomed[v] && out.graph.alive(v)) {
      out.graph.kill(v);
      ++report.vertices_deleted;
    }
  }
  return out;
}

}  // namespace cfree
