#include "cfree/instance_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfree/errors.hpp"
#include "cfree/kv.hpp"

namespace cfree {

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

Vertex parse_vertex(std::string_view tok, std::uint32_t n, std::size_t line) {
  const std::uint64_t v = parse_u64(tok, line);
  if (v >= n) throw ParseError(line, "vertex " + std::string(tok) + " out of range");
  return static_cast<Vertex>(v);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

GraphHeader header_for(const Params& params, Seed seed) {
  return {static_cast<std::uint32_t>(params.n), static_cast<std::uint32_t>(params.r), params.ell, seed,
          params.mode};
}

void write_graph(std::ostream& out, const GraphHeader& h, const ColoredGraph& graph) {
  out << h.n << ' ' << h.r << ' ' << h.ell << ' ' << h.seed << ' ' << to_string(h.mode) << '\n';
  for (Vertex u = 0; u < graph.n(); ++u) {
    const auto red = graph.neighbors(Color::red, u);
    const auto blue = graph.neighbors(Color::blue, u);
    std::size_t i = 0, j = 0;
    while (i < red.size() || j < blue.size()) {
      Vertex v;
      const char* colors;
      if (j == blue.size() || (i < red.size() && red[i] < blue[j])) {
        v = red[i++];
        colors = "R";
      } else if (i == red.size() || blue[j] < red[i]) {
        v = blue[j++];
        colors = "B";
      } else {
        v = red[i++];
        ++j;
        colors = "RB";
      }
      if (v > u) out << u << ' ' << v << ' ' << colors << '\n';
    }
  }
  std::vector<Vertex> dead;
  for (Vertex v = 0; v < graph.n(); ++v) {
    if (!graph.alive(v)) dead.push_back(v);
  }
  if (!dead.empty()) {
    out << "dead";
    for (Vertex v : dead) out << ' ' << v;
    out << '\n';
  }
}

std::pair<GraphHeader, ColoredGraph> read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError(1, "missing header");
  ++line_no;
  const auto head = tokens(line);
  if (head.size() != 5) throw ParseError(line_no, "header must be 'n r ell seed mode'");
  GraphHeader h;
  h.n = static_cast<std::uint32_t>(parse_u64(head[0], line_no));
  h.r = static_cast<std::uint32_t>(parse_u64(head[1], line_no));
  h.ell = static_cast<int>(parse_i64(head[2], line_no));
  h.seed = parse_u64(head[3], line_no);
  try {
    h.mode = mode_from_string(head[4]);
  } catch (const ParameterError& e) {
    throw ParseError(line_no, e.what());
  }

  Adjacency red(h.n), blue(h.n);
  std::vector<std::uint8_t> alive(h.n, 1);
  bool seen_dead = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (seen_dead) throw ParseError(line_no, "content after the dead-vertex line");
    if (tok[0] == "dead") {
      seen_dead = true;
      for (std::size_t i = 1; i < tok.size(); ++i) alive[parse_vertex(tok[i], h.n, line_no)] = 0;
      continue;
    }
    if (tok.size() != 3) throw ParseError(line_no, "edge line must be 'u v colors'");
    const Vertex u = parse_vertex(tok[0], h.n, line_no);
    const Vertex v = parse_vertex(tok[1], h.n, line_no);
    if (u == v) throw ParseError(line_no, "loop edge");
    const auto colors = tok[2];
    if (colors != "R" && colors != "B" && colors != "RB") throw ParseError(line_no, "colors must be R, B or RB");
    if (colors.find('R') != std::string_view::npos) {
      red[u].push_back(v);
      red[v].push_back(u);
    }
    if (colors.find('B') != std::string_view::npos) {
      blue[u].push_back(v);
      blue[v].push_back(u);
    }
  }
  ColoredGraph g(std::move(red), std::move(blue));
  g.set_alive_mask(std::move(alive));
  return {h, std::move(g)};
}

void write_partitions(std::ostream& out, const PartitionPair& partitions) {
  for (Color c : {Color::red, Color::blue}) {
    const Partition& part = partitions.of(c);
    for (std::uint32_t b = 0; b < part.num_blocks(); ++b) {
      out << (c == Color::red ? 'R' : 'B') << ' ' << b;
      for (Vertex v : part.blocks[b]) out << ' ' << v;
      out << '\n';
    }
  }
}

PartitionPair read_partitions(std::istream& in, std::uint32_t n, std::uint32_t r) {
  if (r == 0 || n % r != 0) throw ParseError(0, "block size does not divide n");
  const std::uint32_t m = n / r;
  std::vector<std::vector<Vertex>> blocks[2];
  blocks[0].resize(m);
  blocks[1].resize(m);
  std::vector<std::vector<bool>> seen(2, std::vector<bool>(m, false));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto tok = tokens(line);
    if (tok.empty()) continue;
    if (tok.size() < 2 || (tok[0] != "R" && tok[0] != "B")) throw ParseError(line_no, "expected 'R|B index v...'");
    const int side = tok[0] == "R" ? 0 : 1;
    const std::uint64_t index = parse_u64(tok[1], line_no);
    if (index >= m) throw ParseError(line_no, "block index out of range");
    if (seen[side][index]) throw ParseError(line_no, "duplicate block");
    seen[side][index] = true;
    if (tok.size() - 2 != r) {
      throw ParseError(line_no, "block has " + std::to_string(tok.size() - 2) + " vertices, expected " +
                                    std::to_string(r));
    }
    for (std::size_t i = 2; i < tok.size(); ++i) blocks[side][index].push_back(parse_vertex(tok[i], n, line_no));
  }
  for (int side = 0; side < 2; ++side) {
    for (std::uint32_t b = 0; b < m; ++b) {
      if (!seen[side][b]) throw ParseError(line_no + 1, "missing block " + std::to_string(b) + " (truncated file?)");
    }
  }
  try {
    return {Partition::from_blocks(n, r, std::move(blocks[0])), Partition::from_blocks(n, r, std::move(blocks[1]))};
  } catch (const ParameterError& e) {
    throw ParseError(0, e.what());
  }
}

void save_graph_file(const std::filesystem::path& path, const GraphHeader& header, const ColoredGraph& graph) {
  std::ostringstream out;
  write_graph(out, header, graph);
  write_file(path, out.str());
}

std::pair<GraphHeader, ColoredGraph> load_graph_file(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  return read_graph(in);
}

void save_instance(const std::filesystem::path& dir, const Instance& instance) {
  std::filesystem::create_directories(dir);
  write_file(dir / "params.kv", to_key_value(instance.params));
  save_graph_file(dir / "instance.graph", header_for(instance.params, instance.seed), instance.graph);
  std::ostringstream part;
  write_partitions(part, instance.partitions);
  write_file(dir / "instance.part", part.str());
}

Instance load_instance(const std::filesystem::path& dir) {
  Params params = params_from_key_value(read_file(dir / "params.kv"));
  auto [header, graph] = load_graph_file(dir / "instance.graph");
  if (header.n != params.n || header.r != params.r || header.ell != params.ell) {
    throw ParseError(1, "graph header disagrees with params.kv");
  }
  std::istringstream part_in(read_file(dir / "instance.part"));
  PartitionPair parts = read_partitions(part_in, header.n, header.r);

  Instance inst;
  inst.params = params;
  inst.seed = header.seed;
  inst.red_base = contract(graph.adjacency(Color::red), parts.red);
  inst.blue_base = contract(graph.adjacency(Color::blue), parts.blue);
  if (blow_up(inst.red_base, parts.red) != graph.adjacency(Color::red) ||
      blow_up(inst.blue_base, parts.blue) != graph.adjacency(Color::blue)) {
    throw ParseError(0, "graph is not a blow-up of its partitions");
  }
  inst.partitions = std::move(parts);
  inst.graph = std::move(graph);
  return inst;
}

}  // namespace cfree
