#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "cfree/errors.hpp"
#include "cfree/indep.hpp"

namespace cfree {

namespace {

// State bits for (last color, seen a repeated color): bit c + 2 f.
constexpr std::uint8_t state_bit(Color c, bool repeated) {
  return static_cast<std::uint8_t>(1u << (static_cast<unsigned>(c) + (repeated ? 2u : 0u)));
}

std::uint8_t advance(std::uint8_t states, ColorSet edge, bool first) {
  std::uint8_t out = 0;
  for (Color next : {Color::red, Color::blue}) {
    if (!(edge & bit(next))) continue;
    if (first) {
      out |= state_bit(next, false);
      continue;
    }
    for (Color last : {Color::red, Color::blue}) {
      for (bool rep : {false, true}) {
        if (states & state_bit(last, rep)) out |= state_bit(next, rep || last == next);
      }
    }
  }
  return out;
}

constexpr std::uint8_t kRepeated = state_bit(Color::red, true) | state_bit(Color::blue, true);

// A non-alternating color choice for a path known to admit one.
std::vector<Color> witness_colors(const ColoredGraph& graph, std::span<const Vertex> path) {
  const std::size_t len = path.size() - 1;
  std::vector<std::uint8_t> states(len + 1, 0);
  for (std::size_t i = 0; i < len; ++i) states[i + 1] = advance(states[i], graph.colors(path[i], path[i + 1]), i == 0);
  // Walk backwards choosing a predecessor state consistent with each step.
  std::vector<Color> colors(len);
  std::uint8_t want = states[len] & kRepeated;
  for (std::size_t i = len; i-- > 0;) {
    const ColorSet edge = graph.colors(path[i], path[i + 1]);
    bool chosen = false;
    for (Color c : {Color::red, Color::blue}) {
      for (bool rep : {false, true}) {
        if (chosen || !(want & state_bit(c, rep)) || !(edge & bit(c))) continue;
        if (i == 0) {
          if (!rep) colors[0] = c, chosen = true;
          continue;
        }
        std::uint8_t prev = 0;
        for (Color last : {Color::red, Color::blue}) {
          for (bool prep : {false, true}) {
            if ((states[i] & state_bit(last, prep)) && (prep || last == c) == rep) prev |= state_bit(last, prep);
          }
        }
        if (prev) colors[i] = c, want = prev, chosen = true;
      }
    }
    if (!chosen) throw std::logic_error("witness_colors: inconsistent states");
  }
  return colors;
}

}  // namespace

bool is_non_alternating(std::span<const Color> colors) {
  for (std::size_t i = 1; i < colors.size(); ++i) {
    if (colors[i] == colors[i - 1]) return true;
  }
  return false;
}

ClosedPairSet closed_pairs(const ColoredGraph& graph, std::span<const Vertex> J, int ell) {
  if (ell < 3) throw ParameterError("closed_pairs needs ell >= 3");
  const Csr csr = Csr::from(graph);
  const std::size_t len = static_cast<std::size_t>(ell - 1);
  std::vector<std::uint8_t> in_j(graph.n(), 0), on_path(graph.n(), 0);
  for (Vertex j : J) in_j.at(j) = 1;
  std::map<Edge, ColoredPath> found;
  std::vector<Vertex> path;
  std::vector<std::uint8_t> states;

  for (Vertex x : J) {
    if (!graph.alive(x)) continue;
    path.assign(1, x);
    states.assign(1, 0);
    on_path[x] = 1;
    auto dfs = [&](auto&& self) -> void {
      const Vertex v = path.back();
      const auto row = csr.row(v);
      const auto cols = csr.row_colors(v);
      for (std::size_t i = 0; i < row.size(); ++i) {
        const Vertex u = row[i];
        if (on_path[u]) continue;
        const std::uint8_t next = advance(states.back(), cols[i], path.size() == 1);
        if (path.size() == len) {
          if (u > x && in_j[u] && (next & kRepeated) && !found.count(make_edge(x, u))) {
            path.push_back(u);
            found[make_edge(x, u)] = ColoredPath{path, witness_colors(graph, path)};
            path.pop_back();
          }
          continue;
        }
        path.push_back(u);
        states.push_back(next);
        on_path[u] = 1;
        self(self);
        on_path[u] = 0;
        states.pop_back();
        path.pop_back();
      }
    };
    dfs(dfs);
    on_path[x] = 0;
  }
  ClosedPairSet out;
  for (auto& [e, w] : found) {
    out.pairs.push_back(e);
    out.witnesses.push_back(std::move(w));
  }
  return out;
}

std::uint64_t count_non_alternating_walks(const ColoredGraph& graph, Vertex x, Vertex y, int ell) {
  const Csr csr = Csr::from(graph);
  const std::size_t n = graph.n();
  // count[v][c + 2 f] after the current number of steps.
  std::vector<std::array<std::uint64_t, 4>> cur(n), nxt(n);
  for (auto& a : cur) a.fill(0);
  bool first = true;
  std::vector<std::uint64_t> start(n, 0);
  start.at(x) = 1;
  for (int step = 0; step < ell - 1; ++step) {
    for (auto& a : nxt) a.fill(0);
    for (Vertex v = 0; v < n; ++v) {
      const auto row = csr.row(v);
      const auto cols = csr.row_colors(v);
      for (std::size_t i = 0; i < row.size(); ++i) {
        for (Color c : {Color::red, Color::blue}) {
          if (!(cols[i] & bit(c))) continue;
          const unsigned ci = static_cast<unsigned>(c);
          if (first) {
            nxt[row[i]][ci] += start[v];
            continue;
          }
          for (unsigned last = 0; last < 2; ++last) {
            for (unsigned f = 0; f < 2; ++f) {
              const unsigned nf = (f || last == ci) ? 1 : 0;
              nxt[row[i]][ci + 2 * nf] += cur[v][last + 2 * f];
            }
          }
        }
      }
    }
    first = false;
    std::swap(cur, nxt);
  }
  return cur.at(y)[2] + cur.at(y)[3];
}

Representatives pick_representatives(std::span<const Vertex> I, const PartitionPair& partitions, double delta,
                                     std::uint64_t k) {
  const auto need = static_cast<std::size_t>(std::ceil(delta * static_cast<double>(k) - 1e-9));
  Representatives out;
  for (Color c : {Color::red, Color::blue}) {
    const Partition& part = partitions.of(c);
    std::map<std::uint32_t, Vertex> smallest;
    for (Vertex v : I) {
      auto [it, inserted] = smallest.emplace(part.block_of[v], v);
      if (!inserted) it->second = std::min(it->second, v);
    }
    if (smallest.size() < need) continue;
    std::vector<Vertex> reps;
    for (const auto& [block, v] : smallest) reps.push_back(v);
    std::sort(reps.begin(), reps.end());
    reps.resize(need);
    out.J = std::move(reps);
    out.color = c;
    out.ok = true;
    return out;
  }
  return out;
}

}  // namespace cfree
