#include <doctest.h>

#include <cmath>
#include <set>

#include "cfree/harness.hpp"
#include "cfree/indep.hpp"
#include "oracles.hpp"

using namespace cfree;

namespace {

Params small_params(std::uint64_t n, std::uint64_t r, double p) {
  ParamOverrides o;
  o.p = p, o.r = r, o.k = n / 4, o.delta = 0.5;
  return derive_params(5, n, Mode::operational, o);
}

std::vector<Vertex> random_subset(std::uint32_t n, std::size_t size, Seed seed) {
  std::vector<Vertex> all(n);
  for (Vertex v = 0; v < n; ++v) all[v] = v;
  Rng rng(seed);
  rng.shuffle(std::span(all));
  all.resize(size);
  std::sort(all.begin(), all.end());
  return all;
}

bool valid_witness(const ColoredGraph& g, const ColoredPath& w, Edge pair, int ell) {
  if (w.vertices.size() != std::size_t(ell) || w.colors.size() != std::size_t(ell - 1)) return false;
  if (make_edge(w.vertices.front(), w.vertices.back()) != pair) return false;
  std::set<Vertex> distinct(w.vertices.begin(), w.vertices.end());
  if (distinct.size() != w.vertices.size()) return false;
  for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
    if (!g.has(w.colors[i], w.vertices[i], w.vertices[i + 1])) return false;
  }
  return is_non_alternating(w.colors);
}

}  // namespace

TEST_CASE("non-alternating color sequences") {
  using enum Color;
  CHECK_FALSE(is_non_alternating(std::vector<Color>{red, blue, red, blue}));
  CHECK(is_non_alternating(std::vector<Color>{red, red, blue, blue}));
  CHECK(is_non_alternating(std::vector<Color>{blue, red, red, blue}));
  CHECK_FALSE(is_non_alternating(std::vector<Color>{red}));
}

TEST_CASE("closed pairs on a hand-built path") {
  // x=0 a=1 b=2 c=3 y=4.
  ColoredGraph alt(5);
  alt.add(Color::red, 0, 1);
  alt.add(Color::blue, 1, 2);
  alt.add(Color::red, 2, 3);
  alt.add(Color::blue, 3, 4);
  const std::vector<Vertex> J{0, 4};
  CHECK(closed_pairs(alt, J, 5).pairs.empty());

  ColoredGraph rrbb(5);
  rrbb.add(Color::red, 0, 1);
  rrbb.add(Color::red, 1, 2);
  rrbb.add(Color::blue, 2, 3);
  rrbb.add(Color::blue, 3, 4);
  const ClosedPairSet s = closed_pairs(rrbb, J, 5);
  REQUIRE(s.pairs.size() == 1);
  CHECK(s.pairs[0] == Edge{0, 4});
  CHECK(valid_witness(rrbb, s.witnesses[0], s.pairs[0], 5));

  // A bicolored middle edge may repeat a neighbour's color.
  alt.add(Color::red, 1, 2);
  CHECK(closed_pairs(alt, J, 5).pairs.size() == 1);
}

TEST_CASE("closed pairs match exhaustive path enumeration") {
  for (int s = 0; s < 8; ++s) {
    const Instance inst = sample_instance(small_params(40, 2, 0.2), derive_seed(1, "cp", s));
    const auto J = random_subset(40, 8, derive_seed(1, "J", s));
    const ClosedPairSet got = closed_pairs(inst.graph, J, 5);
    std::set<std::pair<Vertex, Vertex>> mine;
    for (std::size_t i = 0; i < got.pairs.size(); ++i) {
      mine.insert({got.pairs[i].u, got.pairs[i].v});
      CHECK(valid_witness(inst.graph, got.witnesses[i], got.pairs[i], 5));
    }
    CHECK(mine == oracle::closed_pairs(inst.graph, J, 5));
  }
}

TEST_CASE("every closed pair carries at least r non-alternating walks") {
  for (int s = 0; s < 5; ++s) {
    const Params params = small_params(60, 3, 0.15);
    const Instance inst = sample_instance(params, derive_seed(2, "w", s));
    const auto J = random_subset(60, 10, derive_seed(2, "J", s));
    for (const Edge& e : closed_pairs(inst.graph, J, 5).pairs) {
      CHECK(count_non_alternating_walks(inst.graph, e.u, e.v, 5) >= params.r);
    }
  }
}

TEST_CASE("non-alternating walk count against brute force") {
  const Instance inst = sample_instance(small_params(24, 2, 0.3), 9);
  const ColoredGraph& g = inst.graph;
  for (Vertex x = 0; x < 4; ++x) {
    for (Vertex y = 20; y < 24; ++y) {
      std::uint64_t brute = 0;
      // Walks w_0..w_4 with a color per step.
      std::vector<Vertex> w{x};
      std::vector<Color> cs;
      auto rec = [&](auto&& self) -> void {
        if (w.size() == 5) {
          if (w.back() == y && is_non_alternating(cs)) ++brute;
          return;
        }
        for (Vertex u = 0; u < g.n(); ++u) {
          for (Color c : {Color::red, Color::blue}) {
            if (!g.has(c, w.back(), u)) continue;
            w.push_back(u), cs.push_back(c);
            self(self);
            w.pop_back(), cs.pop_back();
          }
        }
      };
      rec(rec);
      CHECK(count_non_alternating_walks(g, x, y, 5) == brute);
    }
  }
}

TEST_CASE("representatives") {
  const Partition red = Partition::from_blocks(12, 3, {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});
  const Partition blue = Partition::from_blocks(12, 3, {{0, 3, 6}, {1, 4, 7}, {2, 5, 8}, {9, 10, 11}});
  const PartitionPair parts{red, blue};
  const std::vector<Vertex> I{1, 2, 4, 10};
  const Representatives r = pick_representatives(I, parts, 0.5, 6);
  REQUIRE(r.ok);
  CHECK(r.color == Color::red);
  CHECK(r.J == std::vector<Vertex>{1, 4, 10});
  // One red block only: fall back to blue.
  const std::vector<Vertex> same_red{0, 1, 2};
  const Representatives b = pick_representatives(same_red, parts, 0.5, 6);
  REQUIRE(b.ok);
  CHECK(b.color == Color::blue);
  CHECK(b.J == std::vector<Vertex>{0, 1, 2});
  CHECK_FALSE(pick_representatives(std::vector<Vertex>{9, 10, 11}, parts, 0.5, 6).ok);
}

TEST_CASE("exposure split: uncoupled red edges stay in G0") {
  ColoredGraph g(16);
  g.add(Color::red, 0, 1);
  g.add(Color::red, 4, 8);
  g.add(Color::blue, 2, 3);
  const Partition p = Partition::from_blocks(16, 4, {{0, 2, 5, 6}, {1, 3, 7, 9}, {4, 10, 11, 12}, {8, 13, 14, 15}});
  const PartitionPair parts{p, p};
  const std::vector<Vertex> J{5, 9};
  const ExposureSplit s = exposure_split(g, parts, J, 5);
  CHECK_FALSE(adjacent(s.G0, 0, 1));  // coupled to {5, 9}
  CHECK(adjacent(s.G0, 4, 8));
  CHECK(adjacent(s.G0, 2, 3));
  // Isolated endpoints cannot be joined.
  CHECK(s.open == std::vector<Edge>{{5, 9}});
  CHECK(s.closed.empty());
}

TEST_CASE("exposure split matches brute-force recomputation") {
  for (int s = 0; s < 6; ++s) {
    const Instance inst = sample_instance(small_params(40, 2, 0.15), derive_seed(4, "ex", s));
    const auto J = random_subset(40, 6, derive_seed(4, "J", s));
    for (Color color : {Color::red, Color::blue}) {
      const ExposureSplit split = exposure_split(inst.graph, inst.partitions, J, 5, color);
      const oracle::Dense g0 = oracle::g0(inst.graph, inst.partitions, J, color);
      const oracle::Dense mine = oracle::dense_from(split.G0);
      CHECK(mine.a == g0.a);
      std::vector<Edge> open;
      for (std::size_t i = 0; i < J.size(); ++i) {
        for (std::size_t j = i + 1; j < J.size(); ++j) {
          if (!oracle::closes_cycle(g0, J[i], J[j], 5)) open.push_back(Edge{J[i], J[j]});
        }
      }
      CHECK(split.open == open);
      CHECK(split.open.size() + split.closed.size() == J.size() * (J.size() - 1) / 2);
    }
  }
}

TEST_CASE("claim checker on a hand-built instance") {
  // r = 1: every block pair is a single pair, so the red edge {0, 1} is
  // coupled to J = {0, 1} and G0 is empty.
  ColoredGraph g(4);
  g.add(Color::red, 0, 1);
  const Partition p = Partition::from_blocks(4, 1, {{0}, {1}, {2}, {3}});
  const PartitionPair parts{p, p};
  const Orderings orderings = build_orderings(parts);
  const std::vector<Vertex> J{0, 1};
  const ExposureSplit split = exposure_split(g, parts, J, 5);
  CHECK(split.open == std::vector<Edge>{{0, 1}});

  // Nothing to delete: e in O cap G'_R survives, so J is not independent.
  const ClaimVerdict kept = check_claim(g, g, orderings, J, split);
  CHECK(kept.open_exposed == std::vector<Edge>{{0, 1}});
  CHECK_FALSE(kept.antecedent);
  CHECK(kept.holds);

  // A final graph that wrongly lost the edge is flagged.
  ColoredGraph lost = g;
  lost.remove_edge(Edge{0, 1});
  const ClaimVerdict flagged = check_claim(g, lost, orderings, J, split);
  CHECK(flagged.antecedent);
  CHECK_FALSE(flagged.holds);
  REQUIRE(flagged.counterexample.has_value());
  CHECK(*flagged.counterexample == Edge{0, 1});

  // O empty: nothing to refute.
  ExposureSplit none = split;
  none.open.clear();
  CHECK(check_claim(g, lost, orderings, J, none).holds);
}

TEST_CASE("claim holds on sampled pipelines") {
  for (int s = 0; s < 5; ++s) {
    const Params params = small_params(60, 3, 0.12);
    const PipelineState st = run_deletions(sample_instance(params, derive_seed(5, "cl", s)), kDefaultEnumerationCap);
    const auto I = independent_set_search(st.edge.graph, params.k, 50, s);
    const Representatives reps = pick_representatives(I, st.instance.partitions, params.delta, params.k);
    if (!reps.ok) continue;
    const ExposureSplit split = exposure_split(st.instance.graph, st.instance.partitions, reps.J, 5, reps.color);
    const ClaimVerdict v = check_claim(st.instance.graph, st.edge.graph, st.orderings, reps.J, split, reps.color);
    CHECK(v.holds);
  }
}
