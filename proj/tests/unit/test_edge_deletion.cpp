#include <doctest.h>

#include <map>
#include <set>

#include "cfree/broken_cycles.hpp"
#include "cfree/cycles.hpp"
#include "cfree/edge_deletion.hpp"
#include "cfree/model.hpp"

using namespace cfree;

namespace {

Partition singletons(std::uint32_t n) {
  std::vector<std::vector<Vertex>> b;
  for (Vertex v = 0; v < n; ++v) b.push_back({v});
  return Partition::from_blocks(n, 1, b);
}

std::vector<Color> colors(const char* s) {
  std::vector<Color> out;
  for (; *s; ++s) out.push_back(*s == 'R' ? Color::red : Color::blue);
  return out;
}

}  // namespace

TEST_CASE("ranks inside a block pair are contiguous") {
  const Partition p = Partition::from_blocks(6, 2, {{1, 2}, {3, 4}, {0, 5}});
  const EdgeOrdering order(p);
  std::vector<std::uint64_t> ranks;
  for (Edge e : {Edge{1, 3}, Edge{1, 4}, Edge{2, 3}, Edge{2, 4}}) ranks.push_back(order.rank(e));
  std::sort(ranks.begin(), ranks.end());
  CHECK(ranks.back() - ranks.front() == 3);
  CHECK(order.rank(Edge{1, 3}) < order.rank(Edge{1, 4}));
  CHECK(order.rank(Edge{1, 4}) < order.rank(Edge{2, 3}));
}

TEST_CASE("rank is a block-consecutive bijection") {
  for (std::uint32_t r : {1u, 2u, 3u, 4u}) {
    const std::uint32_t n = 12;
    const Partition p = sample_partition(n, r, 40 + r);
    const EdgeOrdering order(p);
    std::set<std::uint64_t> seen;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint64_t>> groups;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) {
        const std::uint64_t rk = order.rank({u, v});
        CHECK(rk >= 1);
        CHECK(rk <= n * (n - 1) / 2);
        seen.insert(rk);
        const std::uint32_t a = p.block_of[u], b = p.block_of[v];
        groups[{std::min(a, b), std::max(a, b)}].push_back(rk);
      }
    }
    CHECK(seen.size() == n * (n - 1) / 2);
    for (auto& [key, rs] : groups) {
      std::sort(rs.begin(), rs.end());
      CHECK(rs.back() - rs.front() + 1 == rs.size());
    }
    CHECK(order.size() == n * (n - 1) / 2);
    CHECK(EdgeOrdering(p).rank({0, 7}) == order.rank({0, 7}));
  }
}

TEST_CASE("apex examples") {
  const std::vector<Vertex> c{1, 2, 3, 4, 5};
  const ApexInfo a = find_apex(c, colors("RRBBB"));
  CHECK(a.apex == 5);
  CHECK(a.classification == ApexClass::blue_apex);
  const ApexInfo mono = find_apex(c, colors("RRRRR"));
  CHECK(mono.apex == 5);
  CHECK(mono.classification == ApexClass::mono_red);
  for (const char* last : {"RBRBR", "RBRBB"}) CHECK_NOTHROW(find_apex(c, colors(last)));
  CHECK(find_apex(c, colors("RBRBR")).apex == 1);
  CHECK(find_apex(c, colors("RBRBR")).classification == ApexClass::red_apex);
}

TEST_CASE("deletion edge selection") {
  const Partition p = singletons(8);
  const Orderings ord = build_orderings(PartitionPair{p, p});
  const std::vector<Vertex> c{0, 3, 5, 6, 7};
  // Edges 0-3 R, 3-5 R, 5-6 B, 6-7 B, 7-0 B: corners 3 (R), 6 and 7 (B); apex 7, blue.
  const ApexInfo info = find_apex(c, colors("RRBBB"));
  CHECK(info.classification == ApexClass::blue_apex);
  // Red edges 0-3 and 3-5; with singleton blocks the order is lexicographic.
  CHECK(select_deletion_edge(c, info, ord) == Edge{3, 5});
  const ApexInfo mono = find_apex(c, colors("RRRRR"));
  CHECK(select_deletion_edge(c, mono, ord) == Edge{6, 7});
}

TEST_CASE("bicolored edges evaluate both colorings") {
  const Partition p = singletons(5);
  const PartitionPair parts{p, p};
  ColoredGraph g(5);
  const std::vector<Vertex> c{0, 1, 2, 3, 4};
  for (std::size_t i = 0; i < 5; ++i) g.add(Color::red, c[i], c[(i + 1) % 5]);
  g.add(Color::blue, 2, 3);
  const auto infos = find_apexes(c, g);
  CHECK(infos.size() == 2);
  const Orderings ord = build_orderings(parts);
  std::set<Edge> chosen;
  for (const auto& info : infos) chosen.insert(select_deletion_edge(c, info, ord));
  // All red: the largest edge 3-4. With 2-3 blue: corners 0, 1, 4 red; apex 4 red -> blue edge 2-3.
  CHECK(chosen == std::set<Edge>{{3, 4}, {2, 3}});
  const EdgeDeletion ed = edge_delete(g, ord, 5);
  CHECK(ed.cycles_found == 1);
  CHECK(ed.colorings_processed == 2);
  CHECK(ed.edges_deleted == 2);
  CHECK_FALSE(ed.graph.has_edge(2, 3));
}

TEST_CASE("a single mono-red cycle loses exactly one edge") {
  const Partition p = singletons(7);
  const PartitionPair parts{p, p};
  ColoredGraph g(7);
  const std::vector<Vertex> c{0, 2, 4, 6, 1};
  for (std::size_t i = 0; i < 5; ++i) g.add(Color::red, c[i], c[(i + 1) % 5]);
  const EdgeDeletion ed = edge_delete(g, build_orderings(parts), 5);
  CHECK(ed.edges_deleted == 1);
  CHECK(ed.graph.union_edges().size() == 4);
}

TEST_CASE("edge deletion output is C_ell free and idempotent") {
  for (int ell : {5, 7}) {
    for (int s = 0; s < 6; ++s) {
      ParamOverrides o;
      o.p = ell == 5 ? 0.12 : 0.15, o.r = 3, o.k = 4, o.delta = 0.5;
      const Instance inst = sample_instance(derive_params(ell, 60, Mode::operational, o), derive_seed(9, "ed", s));
      const VertexDeletion vd = vertex_delete(inst.graph, inst.partitions, ell);
      const Orderings ord = build_orderings(inst.partitions);
      const EdgeDeletion ed = edge_delete(vd.graph, ord, ell);
      CHECK(count_cycles(ed.graph, ell) == 0);
      CHECK(ed.edges_deleted <= ed.colorings_processed);
      CHECK(ed.colorings_processed >= ed.cycles_found);
      const EdgeDeletion again = edge_delete(ed.graph, ord, ell);
      CHECK(again.edges_deleted == 0);
    }
  }
}
