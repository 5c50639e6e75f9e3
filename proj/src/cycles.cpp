#include "cfree/cycles.hpp"

#include <algorithm>
#include <string>

#include "cfree/errors.hpp"

namespace cfree {

Csr Csr::from(const ColoredGraph& graph) {
  Csr out;
  const std::uint32_t n = graph.n();
  out.offsets.assign(n + 1, 0);
  for (Vertex u = 0; u < n; ++u) {
    out.offsets[u + 1] = out.offsets[u];
    if (!graph.alive(u)) continue;
    const auto red = graph.neighbors(Color::red, u);
    const auto blue = graph.neighbors(Color::blue, u);
    std::size_t i = 0, j = 0;
    while (i < red.size() || j < blue.size()) {
      Vertex v;
      ColorSet c;
      if (j == blue.size() || (i < red.size() && red[i] < blue[j])) {
        v = red[i++];
        c = kRedBit;
      } else if (i == red.size() || blue[j] < red[i]) {
        v = blue[j++];
        c = kBlueBit;
      } else {
        v = red[i++];
        ++j;
        c = kRedBit | kBlueBit;
      }
      if (!graph.alive(v)) continue;
      out.targets.push_back(v);
      out.colors.push_back(c);
      ++out.offsets[u + 1];
    }
  }
  return out;
}

Csr Csr::from(const Adjacency& adj, std::span<const std::uint8_t> alive) {
  Csr out;
  const auto n = static_cast<std::uint32_t>(adj.size());
  auto is_alive = [&](Vertex v) { return alive.empty() || alive[v] != 0; };
  out.offsets.assign(n + 1, 0);
  for (Vertex u = 0; u < n; ++u) {
    out.offsets[u + 1] = out.offsets[u];
    if (!is_alive(u)) continue;
    for (Vertex v : adj[u]) {
      if (!is_alive(v)) continue;
      out.targets.push_back(v);
      out.colors.push_back(kRedBit);
      ++out.offsets[u + 1];
    }
  }
  return out;
}

namespace {

class CycleSearch {
 public:
  CycleSearch(const Csr& g, int ell, const CycleVisitor& visit, std::uint64_t cap)
      : g_(g), ell_(ell), visit_(visit), cap_(cap), on_path_(g.n(), 0), anchor_mark_(g.n(), UINT32_MAX) {
    path_.reserve(static_cast<std::size_t>(ell));
  }

  EnumerationStats run() {
    for (Vertex a = 0; a < g_.n() && !done(); ++a) {
      const auto row = g_.row(a);
      for (Vertex w : row) anchor_mark_[w] = a;
      path_.assign(1, a);
      on_path_[a] = 1;
      extend(a);
      on_path_[a] = 0;
    }
    return stats_;
  }

 private:
  bool done() const { return stats_.overflow || stats_.stopped; }

  void extend(Vertex anchor) {
    const Vertex cur = path_.back();
    const auto row = g_.row(cur);
    auto it = std::upper_bound(row.begin(), row.end(), anchor);
    const bool closing = static_cast<int>(path_.size()) == ell_ - 1;
    for (; it != row.end() && !done(); ++it) {
      const Vertex w = *it;
      if (on_path_[w]) continue;
      if (closing) {
        if (anchor_mark_[w] != anchor || w < path_[1]) continue;
        path_.push_back(w);
        emit();
        path_.pop_back();
      } else {
        path_.push_back(w);
        on_path_[w] = 1;
        extend(anchor);
        on_path_[w] = 0;
        path_.pop_back();
      }
    }
  }

  void emit() {
    if (stats_.emitted >= cap_) {
      stats_.overflow = true;
      return;
    }
    ++stats_.emitted;
    if (!visit_(path_)) stats_.stopped = true;
  }

  const Csr& g_;
  int ell_;
  const CycleVisitor& visit_;
  std::uint64_t cap_;
  std::vector<std::uint8_t> on_path_;
  std::vector<std::uint32_t> anchor_mark_;
  std::vector<Vertex> path_;
  EnumerationStats stats_;
};

}  // namespace

EnumerationStats enumerate_cycles(const Csr& graph, int ell, const CycleVisitor& visit, std::uint64_t cap) {
  if (ell < 3) throw ParameterError("cycle length must be >= 3");
  return CycleSearch(graph, ell, visit, cap).run();
}

EnumerationStats enumerate_cycles(const ColoredGraph& graph, int ell, const CycleVisitor& visit,
                                  std::uint64_t cap) {
  return enumerate_cycles(Csr::from(graph), ell, visit, cap);
}

namespace {

std::uint64_t count_or_throw(const Csr& g, int ell, std::uint64_t cap) {
  const auto stats = enumerate_cycles(g, ell, [](std::span<const Vertex>) { return true; }, cap);
  if (stats.overflow) {
    throw EnumerationCapExceeded("more than " + std::to_string(cap) + " copies of C_" + std::to_string(ell));
  }
  return stats.emitted;
}

}  // namespace

std::uint64_t count_cycles(const ColoredGraph& graph, int ell, std::uint64_t cap) {
  return count_or_throw(Csr::from(graph), ell, cap);
}

std::uint64_t count_cycles(const Adjacency& graph, int ell, std::uint64_t cap) {
  return count_or_throw(Csr::from(graph), ell, cap);
}

}  // namespace cfree
