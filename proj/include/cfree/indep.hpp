#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cfree/cycles.hpp"
#include "cfree/edge_deletion.hpp"
#include "cfree/graph.hpp"
#include "cfree/params.hpp"
#include "cfree/rng.hpp"

namespace cfree {

struct ColoredPath {
  std::vector<Vertex> vertices;  // ell vertices
  std::vector<Color> colors;     // ell - 1 edge colors
};

// Some two consecutive edges share a color.
bool is_non_alternating(std::span<const Color> colors);

struct ClosedPairSet {
  std::vector<Edge> pairs;             // sorted
  std::vector<ColoredPath> witnesses;  // witnesses[i] joins pairs[i]
};

// Pairs of J joined by a path of length ell - 1 over alive vertices whose
// color sequence is not alternating. Bicolored edges may take either color.
ClosedPairSet closed_pairs(const ColoredGraph& graph, std::span<const Vertex> J, int ell);

// Ordered walks x = w_0, ..., w_{ell-1} = y with a non-alternating color
// sequence, counting every color choice on bicolored edges separately.
std::uint64_t count_non_alternating_walks(const ColoredGraph& graph, Vertex x, Vertex y, int ell);

struct Representatives {
  std::vector<Vertex> J;  // sorted
  Color color = Color::red;  // partition on which J has distinct blocks
  bool ok = false;
};

// Smallest vertex of each block hit by I, first ceil(delta k) of them in
// vertex order; red first, then blue.
Representatives pick_representatives(std::span<const Vertex> I, const PartitionPair& partitions, double delta,
                                     std::uint64_t k);

// Whether the edge f lies in the block pair (for either partition) of some
// pair of distinct vertices of J.
bool coupled_to_pairs(const PartitionPair& partitions, std::span<const Vertex> J, Edge f);

struct ExposureSplit {
  Adjacency G0;           // union graph on all n vertices
  std::vector<Edge> open;  // O, sorted
  std::vector<Edge> closed;  // J^(2) minus O, sorted
};

// G0 = edges of other(color) plus edges of `color` not coupled to a pair of
// J; O = pairs of J with no path of length ell - 1 in G0.
ExposureSplit exposure_split(const ColoredGraph& graph, const PartitionPair& partitions, std::span<const Vertex> J,
                             int ell, Color color = Color::red);

// Pairs {x, y} of J with a simple path of length len from x to y in g.
std::vector<Edge> pairs_joined_by_paths(const Adjacency& g, std::span<const Vertex> J, int len);

struct ClaimVerdict {
  bool antecedent = false;  // J alive and independent in the final graph of the exposed color
  std::vector<Edge> open_exposed;  // O cap G'_color
  std::optional<Edge> counterexample;  // smallest of open_exposed in that color's order
  bool holds = true;
};

// The implication "J independent in G_color => O cap G'_color is empty";
// color is the one passed to exposure_split.
ClaimVerdict check_claim(const ColoredGraph& g_prime, const ColoredGraph& final_graph, const Orderings& orderings,
                         std::span<const Vertex> J, const ExposureSplit& split, Color color = Color::red);

// Randomized greedy plus (1,2)-swap local search with perturbation. Stops
// after `budget` perturbations or once `target` vertices are found; the
// result is verified and at most `target` long.
std::vector<Vertex> independent_set_search(const ColoredGraph& graph, std::uint64_t target, std::uint64_t budget,
                                           Seed seed);
std::vector<Vertex> independent_set_search(const Adjacency& graph, std::span<const std::uint8_t> alive,
                                           std::uint64_t target, std::uint64_t budget, Seed seed);

bool is_independent(const Adjacency& graph, std::span<const Vertex> set);

inline constexpr std::uint32_t kAlphaExactCap = 200;

// Maximum clique of the complement with a greedy coloring bound, on alive
// vertices. Throws ParameterError above the cap.
std::uint32_t alpha_exact(const ColoredGraph& graph, std::uint32_t cap = kAlphaExactCap);
std::uint32_t alpha_exact(const Adjacency& graph, std::span<const std::uint8_t> alive = {},
                          std::uint32_t cap = kAlphaExactCap);

struct Baseline {
  Adjacency graph;
  double p = 0.0;  // (1/2) n^(-1 + 1/(ell-1))
  std::uint64_t edges_sampled = 0;
  std::uint64_t cycles_found = 0;
  std::uint64_t edges_removed = 0;
};

// G(n, p') with one edge (the largest) removed from every C_ell, in one pass.
Baseline baseline_construction(std::uint32_t n, int ell, Seed seed, std::uint64_t cap = kDefaultEnumerationCap);

// (n)_ell p^ell / (2 ell).
double expected_cycle_count(std::uint32_t n, int ell, double p);

struct IndSetBound {
  double log_probability = 0.0;  // log (1 - p)^((delta k)^2 / 4)
  double log_expectation = 0.0;  // log C(n, k) + log_probability
  double log_upper = 0.0;        // k (log n - p delta^2 k / 4)
};

IndSetBound ind_set_probability_bound(const Params& params);

}  // namespace cfree
