#include <doctest.h>

#include <set>

#include "cfree/broken_cycles.hpp"
#include "cfree/cycles.hpp"
#include "cfree/errors.hpp"
#include "cfree/model.hpp"
#include "oracles.hpp"

using namespace cfree;

TEST_CASE("splicing the kink of 1-3-2-4-5") {
  // Red V1={1,2}, V2={3,4}, V3={0,5}, V4={6,7}.
  const Partition red = Partition::from_blocks(8, 2, {{1, 2}, {3, 4}, {0, 5}, {6, 7}});
  const Partition blue = Partition::from_blocks(8, 2, {{1, 6}, {2, 7}, {0, 3}, {4, 5}});
  const PartitionPair parts{red, blue};
  ColoredGraph g(8);
  const std::vector<Vertex> cycle{1, 3, 2, 4, 5};
  for (std::size_t i = 0; i < 5; ++i) g.add(Color::red, cycle[i], cycle[(i + 1) % 5]);
  const BrokenCycle b = kink_reduce(cycle, g, parts);
  CHECK(b.vertices == std::vector<Vertex>{1, 2, 4, 5});
  CHECK(b.kinds ==
        std::vector<EdgeKind>{EdgeKind::broken, EdgeKind::actual, EdgeKind::actual, EdgeKind::actual});
  CHECK(b.actual_count() == 3);
  CHECK(is_simple(b, parts));
  CHECK(is_valid(b, g, parts));
}

TEST_CASE("kink_reduce preconditions") {
  const Partition single = Partition::from_blocks(5, 1, {{0}, {1}, {2}, {3}, {4}});
  const PartitionPair parts{single, single};
  ColoredGraph g(5);
  const std::vector<Vertex> cycle{0, 1, 2, 3, 4};
  for (std::size_t i = 0; i < 5; ++i) g.add(Color::red, cycle[i], cycle[(i + 1) % 5]);
  CHECK_THROWS_AS(kink_reduce(cycle, g, parts), ParameterError);  // simple
  const std::vector<Vertex> not_cycle{0, 2, 1, 3, 4};
  CHECK_THROWS_AS(kink_reduce(not_cycle, g, parts), ParameterError);
}

TEST_CASE("kink_reduce on harvested non-simple cycles") {
  ParamOverrides o;
  o.p = 0.12, o.r = 3, o.k = 4, o.delta = 0.5;
  const Params params = derive_params(5, 60, Mode::operational, o);
  int checked = 0;
  for (int s = 0; s < 20 && checked < 60; ++s) {
    const Instance inst = sample_instance(params, derive_seed(8, "kink", s));
    enumerate_cycles(inst.graph, 5, [&](std::span<const Vertex> c) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < 5; ++i) edges.push_back(make_edge(c[i], c[(i + 1) % 5]));
      if (is_simple(edges, inst.partitions)) return true;
      const BrokenCycle b = kink_reduce(c, inst.graph, inst.partitions);
      CHECK(is_valid(b, inst.graph, inst.partitions));
      CHECK(is_simple(b, inst.partitions));
      CHECK(b.actual_count() % 2 == 1);
      CHECK(b.length() <= 4);
      for (Vertex v : b.vertices) CHECK(std::find(c.begin(), c.end(), v) != c.end());
      const std::vector<Vertex> within(c.begin(), c.end());
      const auto all = oracle::bad_broken_cycles(inst.graph, inst.partitions, 5, within);
      CHECK(all.count(oracle::canonical(b.vertices, b.kinds)) == 1);
      return ++checked < 60;
    });
  }
  CHECK(checked > 20);
}
