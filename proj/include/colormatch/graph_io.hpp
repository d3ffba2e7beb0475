#ifndef COLORMATCH_GRAPH_IO_HPP
#define COLORMATCH_GRAPH_IO_HPP

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/matching.hpp"

// Text formats, 1-based:
//   graph:    "n q" then one "a b c" line per edge, sorted by (a, b)
//   matching: one "a b" line per matched pair, sorted by a
// Anything after '#' on a line is a comment. Blank lines are ignored.

namespace colormatch {

namespace detail {

// Splits the non-comment part of a line into whitespace-separated integers.
inline std::vector<long long> line_fields(std::string_view line, std::size_t line_no) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<long long> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    long long value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + j, value);
    if (ec != std::errc() || ptr != line.data() + j) {
      throw ParseError(line_no, "expected an integer, got '" + std::string(line.substr(i, j - i)) + "'");
    }
    out.push_back(value);
    i = j;
  }
  return out;
}

}  // namespace detail

inline void write_graph(std::ostream& os, const ColoredBipartiteGraph& g) {
  os << g.n() << ' ' << g.q() << '\n';
  for (const Edge& e : g.edges()) os << e.a + 1 << ' ' << e.b + 1 << ' ' << e.color + 1 << '\n';
}

inline std::string serialize(const ColoredBipartiteGraph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

/// Parses the graph text format. Edge lines may come in any order; errors
/// carry the offending line number.
inline ColoredBipartiteGraph read_graph(std::istream& is) {
  std::string line;
  std::size_t line_no = 0;
  long long n = -1;
  long long q = -1;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_line;
  while (std::getline(is, line)) {
    ++line_no;
    auto fields = detail::line_fields(line, line_no);
    if (fields.empty()) continue;
    if (n < 0) {
      if (fields.size() != 2) throw ParseError(line_no, "header must be 'n q'");
      n = fields[0];
      q = fields[1];
      if (n < 0 || n > (1LL << 30)) throw ParseError(line_no, "side size out of range");
      if (q < 1 || q > (1LL << 20)) throw ParseError(line_no, "color count must be positive");
      continue;
    }
    if (fields.size() != 3) throw ParseError(line_no, "edge line must be 'a b c'");
    const long long a = fields[0], b = fields[1], c = fields[2];
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError(line_no, "vertex index out of range [1, n]");
    if (c < 1 || c > q) throw ParseError(line_no, "color index out of range [1, q]");
    edge_line.push_back(line_no);
    edges.push_back(Edge{static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1), static_cast<Color>(c - 1)});
  }
  if (n < 0) throw ParseError(line_no == 0 ? 1 : line_no, "missing 'n q' header");
  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return std::tie(edges[x].a, edges[x].b, edge_line[x]) < std::tie(edges[y].a, edges[y].b, edge_line[y]);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Edge& prev = edges[order[i - 1]];
    const Edge& cur = edges[order[i]];
    if (prev.a == cur.a && prev.b == cur.b) {
      throw ParseError(edge_line[order[i]], "duplicate edge (first seen on line " +
                                                std::to_string(edge_line[order[i - 1]]) + ")");
    }
  }
  return ColoredBipartiteGraph(static_cast<int>(n), static_cast<int>(q), std::move(edges));
}

inline ColoredBipartiteGraph deserialize(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_graph(is);
}

inline void write_matching(std::ostream& os, const Matching& m) {
  for (auto [a, b] : m.pairs()) os << a + 1 << ' ' << b + 1 << '\n';
}

/// Parses "a b" lines into a matching on sides of size n. Structural errors
/// (range, reused vertex) are parse errors; edge membership is checked
/// separately by validate_matching.
inline Matching read_matching(std::istream& is, int n) {
  Matching m(n);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    auto fields = detail::line_fields(line, line_no);
    if (fields.empty()) continue;
    if (fields.size() != 2) throw ParseError(line_no, "matching line must be 'a b'");
    const long long a = fields[0], b = fields[1];
    if (a < 1 || a > n || b < 1 || b > n) throw ParseError(line_no, "vertex index out of range [1, n]");
    if (m.mate_of_a(static_cast<Vertex>(a - 1)) != kUnmatched || m.mate_of_b(static_cast<Vertex>(b - 1)) != kUnmatched) {
      throw ParseError(line_no, "vertex matched twice");
    }
    m.add(static_cast<Vertex>(a - 1), static_cast<Vertex>(b - 1));
  }
  return m;
}

}  // namespace colormatch

#endif  // COLORMATCH_GRAPH_IO_HPP
