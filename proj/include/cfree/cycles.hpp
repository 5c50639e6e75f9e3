#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "cfree/csr.hpp"
#include "cfree/graph.hpp"

namespace cfree {

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000;

struct EnumerationStats {
  std::uint64_t emitted = 0;
  bool overflow = false;  // the cap was hit; emission stopped
  bool stopped = false;   // the visitor asked to stop
};

// Receives a cycle in canonical form: starts at its minimum vertex and the
// second vertex is smaller than the last. Return false to stop.
using CycleVisitor = std::function<bool(std::span<const Vertex>)>;

// Every copy of C_ell among alive vertices, each exactly once. Emission
// stops with overflow = true once `cap` copies have been emitted and another
// is found.
EnumerationStats enumerate_cycles(const Csr& graph, int ell, const CycleVisitor& visit,
                                  std::uint64_t cap = kDefaultEnumerationCap);
EnumerationStats enumerate_cycles(const ColoredGraph& graph, int ell, const CycleVisitor& visit,
                                  std::uint64_t cap = kDefaultEnumerationCap);

// Throws EnumerationCapExceeded on overflow.
std::uint64_t count_cycles(const ColoredGraph& graph, int ell, std::uint64_t cap = kDefaultEnumerationCap);
std::uint64_t count_cycles(const Adjacency& graph, int ell, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace cfree
