#ifndef COLORMATCH_GRAPH_HPP
#define COLORMATCH_GRAPH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "colormatch/errors.hpp"
#include "colormatch/rng.hpp"

namespace colormatch {

// Vertices and colors are 0-based in the library. Text formats and the CLI
// use 1-based indices.
using Vertex = int;
using Color = int;

enum class Side { A, B };

constexpr Side opposite(Side s) noexcept { return s == Side::A ? Side::B : Side::A; }

/// Probability vector (alpha_1, ..., alpha_q) of the i.i.d. edge colors.
class ColorLaw {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit ColorLaw(std::vector<double> alphas) : alphas_(std::move(alphas)) {
    if (alphas_.empty()) throw ArgumentError("color law needs at least one color");
    double sum = 0.0;
    for (double a : alphas_) {
      if (!(a > 0.0)) throw ArgumentError("color probabilities must be positive");
      sum += a;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
      throw ArgumentError("color probabilities must sum to 1 (got " + std::to_string(sum) + ")");
    }
  }

  static ColorLaw uniform(int q) {
    if (q < 1) throw ArgumentError("color count must be at least 1");
    // Built directly: q copies of 1/q may miss the sum tolerance for some q.
    ColorLaw law;
    law.alphas_.assign(static_cast<std::size_t>(q), 1.0 / q);
    return law;
  }

  int q() const noexcept { return static_cast<int>(alphas_.size()); }
  double alpha(Color c) const { return alphas_.at(static_cast<std::size_t>(c)); }
  const std::vector<double>& alphas() const noexcept { return alphas_; }
  double alpha_min() const noexcept { return *std::min_element(alphas_.begin(), alphas_.end()); }

  /// Maps a uniform draw in [0,1) to a color by inverse CDF. The last color
  /// absorbs rounding slack in the cumulative sum.
  Color pick(double u) const noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < alphas_.size(); ++i) {
      acc += alphas_[i];
      if (u < acc) return static_cast<Color>(i);
    }
    return q() - 1;
  }

 private:
  ColorLaw() = default;
  std::vector<double> alphas_;
};

struct Edge {
  Vertex a;
  Vertex b;
  Color color;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple bipartite graph on A = B = {0..n-1}, one color in {0..q-1} per edge.
/// Immutable once built. Edges are kept in canonical (a, b) order and indexed
/// per vertex and color on both sides.
class ColoredBipartiteGraph {
 public:
  ColoredBipartiteGraph(int n, int q, std::vector<Edge> edges) : n_(n), q_(q), edges_(std::move(edges)) {
    if (n < 0) throw ArgumentError("side size must be nonnegative");
    if (q < 1) throw ArgumentError("color count must be at least 1");
    for (const Edge& e : edges_) {
      if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) throw ArgumentError("edge endpoint out of range");
      if (e.color < 0 || e.color >= q) throw ArgumentError("edge color out of range");
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b) {
        throw ArgumentError("duplicate edge (" + std::to_string(edges_[i].a + 1) + ", " +
                            std::to_string(edges_[i].b + 1) + ")");
      }
    }
    build_index();
  }

  int n() const noexcept { return n_; }
  int q() const noexcept { return q_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::span<const Edge> edges() const noexcept { return edges_; }

  /// All edges at an A-vertex, sorted by b.
  std::span<const Edge> edges_at(Vertex a) const {
    check_vertex(a);
    return std::span<const Edge>(edges_).subspan(row_start_[a], row_start_[a + 1] - row_start_[a]);
  }

  /// Color of edge {a, b}, or nullopt when absent.
  std::optional<Color> color_of(Vertex a, Vertex b) const {
    check_vertex(b);
    auto row = edges_at(a);
    auto it = std::lower_bound(row.begin(), row.end(), b, [](const Edge& e, Vertex v) { return e.b < v; });
    if (it == row.end() || it->b != b) return std::nullopt;
    return it->color;
  }

  /// Color-c neighbors of vertex v on the given side, ascending.
  std::span<const Vertex> neighbors(Side side, Vertex v, Color c) const {
    check_vertex(v);
    check_color(c);
    const Index& idx = side == Side::A ? a_index_ : b_index_;
    const std::size_t slot = static_cast<std::size_t>(v) * q_ + c;
    return std::span<const Vertex>(idx.nbrs).subspan(idx.start[slot], idx.start[slot + 1] - idx.start[slot]);
  }

  std::size_t degree(Side side, Vertex v, Color c) const { return neighbors(side, v, c).size(); }

  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw ArgumentError("vertex " + std::to_string(v + 1) + " out of range");
  }
  void check_color(Color c) const {
    if (c < 0 || c >= q_) throw ArgumentError("color " + std::to_string(c + 1) + " out of range");
  }

  friend bool operator==(const ColoredBipartiteGraph& x, const ColoredBipartiteGraph& y) {
    return x.n_ == y.n_ && x.q_ == y.q_ && x.edges_ == y.edges_;
  }

 private:
  struct Index {
    std::vector<std::size_t> start;  // n*q + 1 offsets
    std::vector<Vertex> nbrs;
  };

  void build_index() {
    row_start_.assign(static_cast<std::size_t>(n_) + 1, 0);
    for (const Edge& e : edges_) ++row_start_[e.a + 1];
    for (int v = 0; v < n_; ++v) row_start_[v + 1] += row_start_[v];
    fill_index(a_index_, [](const Edge& e) { return std::pair{e.a, e.b}; });
    fill_index(b_index_, [](const Edge& e) { return std::pair{e.b, e.a}; });
  }

  template <typename Orient>
  void fill_index(Index& idx, Orient orient) {
    const std::size_t slots = static_cast<std::size_t>(n_) * q_;
    idx.start.assign(slots + 1, 0);
    for (const Edge& e : edges_) ++idx.start[static_cast<std::size_t>(orient(e).first) * q_ + e.color + 1];
    for (std::size_t s = 0; s < slots; ++s) idx.start[s + 1] += idx.start[s];
    idx.nbrs.resize(edges_.size());
    std::vector<std::size_t> fill(idx.start.begin(), idx.start.end() - 1);
    // Canonical edge order makes each B-side list ascending in a, and each
    // A-side list ascending in b.
    for (const Edge& e : edges_) {
      auto [v, w] = orient(e);
      idx.nbrs[fill[static_cast<std::size_t>(v) * q_ + e.color]++] = w;
    }
  }

  int n_;
  int q_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> row_start_;
  Index a_index_;
  Index b_index_;
};

struct RandomModelParams {
  int n;
  double omega;
  ColorLaw law;
  std::uint64_t seed;
};

/// p = (ln n + omega) / n. Throws ModelDomainError when p is not in (0, 1].
inline double edge_probability(int n, double omega) {
  if (n < 2) throw ModelDomainError("side size must be at least 2");
  const double p = (std::log(static_cast<double>(n)) + omega) / n;
  if (!(p > 0.0) || p > 1.0) {
    throw ModelDomainError("edge probability " + std::to_string(p) + " outside (0,1]");
  }
  return p;
}

/// The default omega = ln ln n.
inline double default_omega(int n) { return std::log(std::log(static_cast<double>(n))); }

/// G(n,n,p) with i.i.d. colors. Draw order is canonical: pairs (a, b) in
/// row-major order; each pair consumes one draw for existence and, when
/// present, one more for its color.
inline ColoredBipartiteGraph generate(int n, double p, const ColorLaw& law, std::uint64_t seed) {
  if (n < 0) throw ArgumentError("side size must be nonnegative");
  if (!(p > 0.0) || p > 1.0) throw ModelDomainError("edge probability " + std::to_string(p) + " outside (0,1]");
  SplitMix64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(static_cast<double>(n) * n * p * 1.1) + 16);
  for (Vertex a = 0; a < n; ++a) {
    for (Vertex b = 0; b < n; ++b) {
      if (rng.uniform() < p) edges.push_back(Edge{a, b, law.pick(rng.uniform())});
    }
  }
  return ColoredBipartiteGraph(n, law.q(), std::move(edges));
}

inline ColoredBipartiteGraph generate(const RandomModelParams& params) {
  return generate(params.n, edge_probability(params.n, params.omega), params.law, params.seed);
}

namespace detail {

// Membership marker for a vertex set; rejects out-of-range and repeated vertices.
inline std::vector<char> mark_set(const ColoredBipartiteGraph& g, std::span<const Vertex> set) {
  std::vector<char> mark(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : set) {
    g.check_vertex(v);
    if (mark[v]) throw ArgumentError("vertex " + std::to_string(v + 1) + " repeated in set");
    mark[v] = 1;
  }
  return mark;
}

}  // namespace detail

/// e_c(S, T): number of color-c edges between S (in A) and T (in B).
inline std::size_t count_color_edges(const ColoredBipartiteGraph& g, std::span<const Vertex> s,
                                     std::span<const Vertex> t, Color c) {
  g.check_color(c);
  detail::mark_set(g, s);
  const std::vector<char> in_t = detail::mark_set(g, t);
  std::size_t count = 0;
  for (Vertex a : s) {
    for (Vertex b : g.neighbors(Side::A, a, c)) count += in_t[b];
  }
  return count;
}

/// N_c(S): vertices on the opposite side joined to S by a color-c edge, ascending.
inline std::vector<Vertex> neighbors_colored(const ColoredBipartiteGraph& g, Side side,
                                             std::span<const Vertex> s, Color c) {
  g.check_color(c);
  std::vector<char> hit(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : s) {
    for (Vertex w : g.neighbors(side, v, c)) hit[w] = 1;
  }
  std::vector<Vertex> out;
  for (Vertex w = 0; w < g.n(); ++w) {
    if (hit[w]) out.push_back(w);
  }
  return out;
}

/// Same vertex sides and color count; only the color-c edges.
inline ColoredBipartiteGraph color_subgraph(const ColoredBipartiteGraph& g, Color c) {
  g.check_color(c);
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (e.color == c) kept.push_back(e);
  }
  return ColoredBipartiteGraph(g.n(), g.q(), std::move(kept));
}

}  // namespace colormatch

#endif  // COLORMATCH_GRAPH_HPP
