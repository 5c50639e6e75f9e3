#pragma once

#include <filesystem>
#include <iosfwd>
#include <utility>

#include "cfree/graph.hpp"
#include "cfree/model.hpp"
#include "cfree/params.hpp"

namespace cfree {

// Graph file:      "n r ell seed mode" header, one "u v R|B|RB" line per
//                  edge (u < v, sorted), then an optional "dead v..." line
//                  listing deleted vertices.
// Partition file:  one "R|B index v1 ... vr" line per block, red first.
// Vertices are 0-based.
struct GraphHeader {
  std::uint32_t n = 0;
  std::uint32_t r = 1;
  int ell = 5;
  Seed seed = 0;
  Mode mode = Mode::operational;
};

GraphHeader header_for(const Params& params, Seed seed);

void write_graph(std::ostream& out, const GraphHeader& header, const ColoredGraph& graph);
std::pair<GraphHeader, ColoredGraph> read_graph(std::istream& in);

void write_partitions(std::ostream& out, const PartitionPair& partitions);
PartitionPair read_partitions(std::istream& in, std::uint32_t n, std::uint32_t r);

// Directory layout: params.kv, instance.graph (G' with the alive mask) and
// instance.part. The base graphs are recovered from G' and the partitions.
void save_instance(const std::filesystem::path& dir, const Instance& instance);
Instance load_instance(const std::filesystem::path& dir);

void save_graph_file(const std::filesystem::path& path, const GraphHeader& header, const ColoredGraph& graph);
std::pair<GraphHeader, ColoredGraph> load_graph_file(const std::filesystem::path& path);

}  // namespace cfree
