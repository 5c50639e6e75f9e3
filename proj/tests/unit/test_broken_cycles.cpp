#include <doctest.h>

#include <set>

#include "cfree/broken_cycles.hpp"
#include "cfree/cycles.hpp"
#include "cfree/model.hpp"
#include "oracles.hpp"

using namespace cfree;

namespace {

Partition singletons(std::uint32_t n) {
  std::vector<std::vector<Vertex>> b;
  for (Vertex v = 0; v < n; ++v) b.push_back({v});
  return Partition::from_blocks(n, 1, b);
}

std::set<std::vector<std::uint32_t>> emitted(const ColoredGraph& g, const PartitionPair& parts, int ell) {
  std::set<std::vector<std::uint32_t>> out;
  enumerate_bad_broken_cycles(g, parts, ell, [&](const BrokenCycleView& c) {
    std::vector<Vertex> vs(c.vertices.begin(), c.vertices.end());
    std::vector<EdgeKind> ks(c.kinds.begin(), c.kinds.end());
    const bool fresh = out.insert(oracle::canonical(vs, ks)).second;
    CHECK(fresh);
    BrokenCycle b{vs, ks};
    CHECK(is_valid(b, g, parts));
    CHECK(is_simple(b, parts));
    CHECK(c.actual == int(b.actual_count()));
    CHECK(c.actual % 2 == 1);
    CHECK(vs[0] == *std::min_element(vs.begin(), vs.end()));
    return true;
  });
  return out;
}

Instance small_instance(std::uint32_t n, std::uint32_t r, double p, Seed seed) {
  ParamOverrides o;
  o.p = p, o.r = r, o.k = 4, o.delta = 0.5;
  return sample_instance(derive_params(5, n, Mode::operational, o), seed);
}

}  // namespace

TEST_CASE("an all-actual triangle across distinct block pairs is bad") {
  ColoredGraph g(6);
  g.add(Color::red, 0, 1);
  g.add(Color::red, 1, 2);
  g.add(Color::blue, 0, 2);
  const PartitionPair parts{singletons(6), singletons(6)};
  VertexDeletion vd = vertex_delete(g, parts, 5);
  CHECK(vd.report.bad_broken_cycles_found == 1);
  CHECK(vd.report.histogram.at({3, 3}) == 1);
  CHECK(vd.report.vertices_deleted == 3);
  CHECK_FALSE(vd.graph.alive(0));
  CHECK_FALSE(vd.graph.alive(2));
  CHECK(vd.graph.alive(3));
}

TEST_CASE("a red edge inside a blue block gives a t = 2 broken cycle") {
  ColoredGraph g(4);
  g.add(Color::red, 0, 1);
  const PartitionPair parts{Partition::from_blocks(4, 2, {{0, 2}, {1, 3}}),
                            Partition::from_blocks(4, 2, {{0, 1}, {2, 3}})};
  bool found = false;
  enumerate_bad_broken_cycles(g, parts, 5, [&](const BrokenCycleView& c) {
    if (c.vertices.size() == 2) {
      found = true;
      CHECK(c.vertices[0] == 0);
      CHECK(c.vertices[1] == 1);
      CHECK(c.kinds[0] == EdgeKind::actual);
      CHECK(c.kinds[1] == EdgeKind::broken);
    }
    return true;
  });
  CHECK(found);
  CHECK(emitted(g, parts, 5) == oracle::bad_broken_cycles(g, parts, 5));
}

TEST_CASE("an even all-actual cycle is not bad") {
  ColoredGraph g(4);
  g.add(Color::red, 0, 1);
  g.add(Color::red, 1, 2);
  g.add(Color::red, 2, 3);
  g.add(Color::red, 3, 0);
  const PartitionPair parts{singletons(4), singletons(4)};
  CHECK(emitted(g, parts, 5).empty());
  CHECK(vertex_delete(g, parts, 5).report.vertices_deleted == 0);
}

TEST_CASE("enumeration matches the brute-force oracle on random instances") {
  for (int s = 0; s < 12; ++s) {
    const Instance inst = small_instance(16, s % 2 ? 2 : 4, 0.35, derive_seed(4, "bc", s));
    CHECK(emitted(inst.graph, inst.partitions, 5) == oracle::bad_broken_cycles(inst.graph, inst.partitions, 5));
  }
}

TEST_CASE("vertex deletion removes exactly the oracle's vertex union") {
  for (int s = 0; s < 8; ++s) {
    const Instance inst = small_instance(16, 4, 0.3, derive_seed(5, "vd", s));
    const auto cycles = oracle::bad_broken_cycles(inst.graph, inst.partitions, 5);
    std::set<Vertex> doomed;
    for (const auto& key : cycles) {
      for (std::size_t i = 0; i < key.size(); i += 2) doomed.insert(key[i]);
    }
    const VertexDeletion vd = vertex_delete(inst.graph, inst.partitions, 5);
    CHECK(vd.report.bad_broken_cycles_found == cycles.size());
    CHECK(vd.report.vertices_deleted == doomed.size());
    for (Vertex v = 0; v < 16; ++v) CHECK(vd.graph.alive(v) == !doomed.count(v));
  }
}

TEST_CASE("after vertex deletion every C_ell is simple and short odd cycles are gone") {
  for (int s = 0; s < 10; ++s) {
    const Instance inst = small_instance(60, 3, 0.12, derive_seed(6, "hat", s));
    const VertexDeletion vd = vertex_delete(inst.graph, inst.partitions, 5);
    enumerate_cycles(vd.graph, 5, [&](std::span<const Vertex> c) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < c.size(); ++i) edges.push_back(make_edge(c[i], c[(i + 1) % c.size()]));
      CHECK(is_simple(edges, inst.partitions));
      return true;
    });
    enumerate_cycles(vd.graph, 3, [&](std::span<const Vertex> c) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < 3; ++i) edges.push_back(make_edge(c[i], c[(i + 1) % 3]));
      CHECK_FALSE(is_simple(edges, inst.partitions));
      return true;
    });
  }
}

TEST_CASE("is_valid rejects illegal steps") {
  ColoredGraph g(4);
  g.add(Color::red, 0, 1);
  const PartitionPair parts{Partition::from_blocks(4, 2, {{0, 2}, {1, 3}}),
                            Partition::from_blocks(4, 2, {{0, 1}, {2, 3}})};
  CHECK(is_valid(BrokenCycle{{0, 1}, {EdgeKind::actual, EdgeKind::broken}}, g, parts));
  CHECK_FALSE(is_valid(BrokenCycle{{0, 3}, {EdgeKind::actual, EdgeKind::broken}}, g, parts));
  CHECK_FALSE(is_valid(BrokenCycle{{0, 1}, {EdgeKind::broken, EdgeKind::broken}}, g, parts));
  CHECK_FALSE(is_valid(BrokenCycle{{0, 0}, {EdgeKind::actual, EdgeKind::broken}}, g, parts));
}
