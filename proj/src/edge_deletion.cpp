#include "cfree/edge_deletion.hpp"

#include <algorithm>
#include <stdexcept>

#include "cfree/errors.hpp"

namespace cfree {

namespace {

std::uint64_t choose2(std::uint64_t x) { return x * (x - (x > 0 ? 1 : 0)) / 2; }

}  // namespace

EdgeOrdering::EdgeOrdering(const Partition& partition) : part_(partition) {}

std::uint64_t EdgeOrdering::size() const { return choose2(part_.n()); }

std::uint64_t EdgeOrdering::rank(Edge e) const {
  const std::uint64_t m = part_.num_blocks();
  const std::uint64_t r = part_.r;
  std::uint64_t bi = part_.block_of[e.u];
  std::uint64_t bj = part_.block_of[e.v];
  if (bi == bj) {
    const std::uint64_t p = part_.position[e.u];
    const std::uint64_t q = part_.position[e.v];
    const std::uint64_t lo = std::min(p, q), hi = std::max(p, q);
    const std::uint64_t within = lo * r - lo * (lo + 1) / 2 + (hi - lo - 1);
    return choose2(m) * r * r + bi * choose2(r) + within + 1;
  }
  if (bi > bj) std::swap(bi, bj);
  const std::uint64_t segment = bi * m - bi * (bi + 1) / 2 + (bj - bi - 1);
  std::uint64_t below = 0;
  for (Vertex x : part_.blocks[bi]) {
    for (Vertex y : part_.blocks[bj]) {
      if (make_edge(x, y) < e) ++below;
    }
  }
  return segment * r * r + below + 1;
}

Orderings build_orderings(const PartitionPair& partitions) {
  return {EdgeOrdering(partitions.red), EdgeOrdering(partitions.blue)};
}

const char* to_string(ApexClass c) {
  switch (c) {
    case ApexClass::mono_red: return "mono-red";
    case ApexClass::mono_blue: return "mono-blue";
    case ApexClass::red_apex: return "red-apex";
    case ApexClass::blue_apex: return "blue-apex";
  }
  return "?";
}

ApexInfo find_apex(std::span<const Vertex> cycle, std::span<const Color> coloring) {
  const std::size_t t = cycle.size();
  if (t < 3 || t % 2 == 0 || coloring.size() != t) throw ParameterError("find_apex needs an odd cycle and a coloring");
  ApexInfo info;
  info.coloring.assign(coloring.begin(), coloring.end());
  bool found = false;
  for (std::size_t i = 0; i < t; ++i) {
    const Color before = coloring[(i + t - 1) % t];
    if (before != coloring[i]) continue;
    if (!found || cycle[i] > info.apex) {
      info.apex = cycle[i];
      info.classification = before == Color::red ? ApexClass::red_apex : ApexClass::blue_apex;
      found = true;
    }
  }
  if (!found) throw std::logic_error("find_apex: odd cycle without a monochromatic corner");
  const bool all_red = std::all_of(coloring.begin(), coloring.end(), [](Color c) { return c == Color::red; });
  const bool all_blue = std::all_of(coloring.begin(), coloring.end(), [](Color c) { return c == Color::blue; });
  if (all_red) info.classification = ApexClass::mono_red;
  if (all_blue) info.classification = ApexClass::mono_blue;
  return info;
}

std::vector<ApexInfo> find_apexes(std::span<const Vertex> cycle, const ColoredGraph& graph) {
  const std::size_t t = cycle.size();
  std::vector<Color> base(t, Color::red);
  std::vector<std::size_t> both;
  for (std::size_t i = 0; i < t; ++i) {
    const ColorSet cs = graph.colors(cycle[i], cycle[(i + 1) % t]);
    if (cs == 0) throw ParameterError("find_apexes: cycle edge missing from the graph");
    if (cs == (kRedBit | kBlueBit)) both.push_back(i);
    else base[i] = cs == kRedBit ? Color::red : Color::blue;
  }
  std::vector<ApexInfo> out;
  out.reserve(std::size_t{1} << both.size());
  for (std::uint32_t mask = 0; mask < (1u << both.size()); ++mask) {
    for (std::size_t b = 0; b < both.size(); ++b) base[both[b]] = (mask >> b) & 1 ? Color::blue : Color::red;
    out.push_back(find_apex(cycle, base));
  }
  return out;
}

Edge select_deletion_edge(std::span<const Vertex> cycle, const ApexInfo& info, const Orderings& orderings) {
  const std::size_t t = cycle.size();
  Color wanted = Color::red;
  switch (info.classification) {
    case ApexClass::mono_red: wanted = Color::red; break;
    case ApexClass::mono_blue: wanted = Color::blue; break;
    case ApexClass::red_apex: wanted = Color::blue; break;
    case ApexClass::blue_apex: wanted = Color::red; break;
  }
  const EdgeOrdering& order = orderings.of(wanted);
  Edge best{};
  std::uint64_t best_rank = 0;
  for (std::size_t i = 0; i < t; ++i) {
    if (info.coloring[i] != wanted) continue;
    const Edge e = make_edge(cycle[i], cycle[(i + 1) % t]);
    const std::uint64_t rk = order.rank(e);
    if (rk > best_rank) best_rank = rk, best = e;
  }
  if (best_rank == 0) throw std::logic_error("select_deletion_edge: no edge of the required color");
  return best;
}

EdgeDeletion edge_delete(const ColoredGraph& g_hat, const Orderings& orderings, int ell, std::uint64_t cap) {
  EdgeDeletion result;
  std::vector<Edge> selected;
  const EnumerationStats stats = enumerate_cycles(
      g_hat, ell,
      [&](std::span<const Vertex> cycle) {
        ++result.cycles_found;
        for (const ApexInfo& info : find_apexes(cycle, g_hat)) {
          ++result.colorings_processed;
          selected.push_back(select_deletion_edge(cycle, info, orderings));
        }
        return true;
      },
      cap);
  if (stats.overflow) throw EnumerationCapExceeded("edge deletion: more than " + std::to_string(cap) + " cycles");
  std::sort(selected.begin(), selected.end());
  selected.erase(std::unique(selected.begin(), selected.end()), selected.end());
  result.graph = g_hat;
  for (const Edge& e : selected) result.graph.remove_edge(e);
  result.edges_deleted = selected.size();
  return result;
}

}  // namespace cfree
