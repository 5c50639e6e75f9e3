#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfree/errors.hpp"
#include "cfree/instance_io.hpp"

using namespace cfree;
namespace fs = std::filesystem;

namespace {

Params small_params() {
  ParamOverrides o;
  o.p = 0.25, o.r = 3, o.k = 10, o.delta = 0.5;
  return derive_params(5, 36, Mode::operational, o);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("cfree_io_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("graph text round trip") {
  const Instance inst = sample_instance(small_params(), 4);
  ColoredGraph g = inst.graph;
  g.kill(5);
  g.kill(17);
  std::stringstream out;
  write_graph(out, header_for(inst.params, inst.seed), g);
  const auto [header, back] = read_graph(out);
  CHECK(header.n == 36);
  CHECK(header.seed == 4);
  CHECK(back.adjacency(Color::red) == g.adjacency(Color::red));
  CHECK(back.adjacency(Color::blue) == g.adjacency(Color::blue));
  CHECK(back.alive_mask() == g.alive_mask());
  std::stringstream again;
  write_graph(again, header, back);
  CHECK(again.str() == out.str());
}

TEST_CASE("save, load, save gives identical bytes") {
  const Instance inst = sample_instance(small_params(), 9);
  const fs::path a = temp_dir("a"), b = temp_dir("b");
  save_instance(a, inst);
  const Instance loaded = load_instance(a);
  save_instance(b, loaded);
  for (const char* f : {"params.kv", "instance.graph", "instance.part"}) CHECK(slurp(a / f) == slurp(b / f));
  CHECK(loaded.red_base.adj == inst.red_base.adj);
  CHECK(loaded.blue_base.adj == inst.blue_base.adj);
  CHECK(loaded.params.p == inst.params.p);
}

TEST_CASE("malformed graph lines are reported with their line number") {
  std::stringstream bad("10 2 5 1 operational\n0 1 R\n2 3 X\n");
  try {
    read_graph(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::stringstream truncated("10 2 5 1 operational\n0 1 R\n2 3\n");
  try {
    read_graph(truncated);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::stringstream range("10 2 5 1 operational\n0 11 R\n");
  CHECK_THROWS_AS(read_graph(range), ParseError);
}

TEST_CASE("partition file validation") {
  std::stringstream wrong_size("R 0 0 1 2\nR 1 3 4\nB 0 0 1\nB 1 2 3\n");
  CHECK_THROWS_AS(read_partitions(wrong_size, 6, 2), ParseError);
  std::stringstream missing("R 0 0 1\nR 1 2 3\nB 0 0 2\nB 1 1 3\n");
  try {
    read_partitions(missing, 6, 2);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("truncated") != std::string::npos);
  }
  std::stringstream dup("R 0 0 1\nR 1 0 3\nR 2 4 5\nB 0 0 1\nB 1 2 3\nB 2 4 5\n");
  CHECK_THROWS_AS(read_partitions(dup, 6, 2), ParseError);
  std::stringstream good("R 0 0 1\nR 1 2 3\nR 2 4 5\nB 0 0 2\nB 1 1 3\nB 2 4 5\n");
  const PartitionPair parts = read_partitions(good, 6, 2);
  CHECK(parts.blue.block_of[3] == 1);
}

TEST_CASE("load rejects a graph that is not a blow-up of its partitions") {
  const Instance inst = sample_instance(small_params(), 2);
  const fs::path d = temp_dir("bad");
  save_instance(d, inst);
  ColoredGraph g = inst.graph;
  // Drop one red edge: the red graph is no longer a blow-up.
  const Edge e = g.edges(Color::red).front();
  g.remove_edge(e);
  save_graph_file(d / "instance.graph", header_for(inst.params, inst.seed), g);
  CHECK_THROWS_AS(load_instance(d), ParseError);
}
