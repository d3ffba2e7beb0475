#ifndef COLORMATCH_RECOLOR_HPP
#define COLORMATCH_RECOLOR_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/matching.hpp"

namespace colormatch {

/// Closed alternating sequence x_1 y_1 x_2 y_2 ... x_l y_l x_1 with
/// e_i = {x_i, y_i} in M and f_i = {y_i, x_{i+1}} not in M. e_1 has color
/// src; every other edge of the cycle has color dst.
struct AlternatingCycle {
  Color src = 0;
  Color dst = 0;
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;

  std::size_t length() const noexcept { return xs.size(); }

  friend bool operator==(const AlternatingCycle&, const AlternatingCycle&) = default;
};

/// Throws ConsistencyError naming the first violated cycle invariant.
inline void validate_cycle(const ColoredBipartiteGraph& g, const Matching& m, const AlternatingCycle& cyc) {
  const std::size_t len = cyc.xs.size();
  if (cyc.ys.size() != len) throw ConsistencyError("cycle has unequal x and y sequences");
  if (len < 2) throw ConsistencyError("cycle must have length at least 2");
  if (cyc.src == cyc.dst) throw ConsistencyError("cycle colors must differ");
  if (m.n() != g.n()) throw ConsistencyError("matching and graph sizes differ");
  std::vector<char> seen(static_cast<std::size_t>(g.n()), 0);
  for (std::size_t i = 0; i < len; ++i) {
    const Vertex x = cyc.xs[i];
    const Vertex y = cyc.ys[i];
    g.check_vertex(x);
    g.check_vertex(y);
    if (seen[x]) throw ConsistencyError("cycle repeats a vertex");
    seen[x] = 1;
    if (m.mate_of_a(x) != y) throw ConsistencyError("e-edge " + std::to_string(i + 1) + " is not in the matching");
    const auto ce = g.color_of(x, y);
    if (!ce) throw ConsistencyError("e-edge " + std::to_string(i + 1) + " is not an edge");
    if (*ce != (i == 0 ? cyc.src : cyc.dst)) {
      throw ConsistencyError("e-edge " + std::to_string(i + 1) + " has the wrong color");
    }
    const Vertex next = cyc.xs[(i + 1) % len];
    g.check_vertex(next);
    if (m.mate_of_a(next) == y) throw ConsistencyError("f-edge " + std::to_string(i + 1) + " is in the matching");
    const auto cf = g.color_of(next, y);
    if (!cf) throw ConsistencyError("f-edge " + std::to_string(i + 1) + " is not an edge");
    if (*cf != cyc.dst) throw ConsistencyError("f-edge " + std::to_string(i + 1) + " has the wrong color");
  }
}

/// Finds an alternating cycle whose symmetric difference with M trades one
/// src-colored matching edge for one dst-colored edge.
///
/// Works on the digraph whose nodes are matching edges, with an arc
/// (x, M(x)) -> (x', M(x')) whenever {M(x), x'} is a dst-colored non-matching
/// edge. Starts are the src-colored matching edges in ascending order of x;
/// from each start a BFS through dst-colored nodes looks for a node with an
/// arc back to the start. The first start that admits a cycle returns its
/// shortest one, so nullopt means no start admits any.
inline std::optional<AlternatingCycle> find_swap_cycle(const ColoredBipartiteGraph& g, const Matching& m,
                                                       Color src, Color dst) {
  g.check_color(src);
  g.check_color(dst);
  if (src == dst) throw ArgumentError("src and dst colors must differ");
  if (!is_perfect(g, m)) throw ArgumentError("cycle search needs a perfect matching");
  const int n = g.n();
  std::vector<Color> node_color(static_cast<std::size_t>(n));
  bool any_src = false;
  for (Vertex x = 0; x < n; ++x) {
    const auto c = g.color_of(x, m.mate_of_a(x));
    if (!c) throw ArgumentError("matching uses a non-edge");
    node_color[x] = *c;
    any_src = any_src || *c == src;
  }
  if (!any_src) throw ArgumentError("matching has no edge of color " + std::to_string(src + 1));

  std::vector<int> visit_stamp(static_cast<std::size_t>(n), -1);
  std::vector<int> closer_stamp(static_cast<std::size_t>(n), -1);
  std::vector<Vertex> parent(static_cast<std::size_t>(n), kUnmatched);
  std::vector<Vertex> queue;
  queue.reserve(static_cast<std::size_t>(n));

  for (Vertex s = 0; s < n; ++s) {
    if (node_color[s] != src) continue;
    // Nodes with an arc back to s: dst-colored matching edges (x, y) with
    // {y, s} a dst-colored edge.
    bool any_closer = false;
    for (Vertex y : g.neighbors(Side::A, s, dst)) {
      const Vertex x = m.mate_of_b(y);
      if (node_color[x] == dst) {
        closer_stamp[x] = s;
        any_closer = true;
      }
    }
    if (!any_closer) continue;

    queue.assign(1, s);
    visit_stamp[s] = s;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (Vertex x : g.neighbors(Side::B, m.mate_of_a(u), dst)) {
        if (x == u || node_color[x] != dst || visit_stamp[x] == s) continue;
        visit_stamp[x] = s;
        parent[x] = u;
        if (closer_stamp[x] == s) {
          AlternatingCycle cyc{src, dst, {}, {}};
          for (Vertex v = x; v != s; v = parent[v]) cyc.xs.push_back(v);
          cyc.xs.push_back(s);
          std::reverse(cyc.xs.begin(), cyc.xs.end());
          for (Vertex v : cyc.xs) cyc.ys.push_back(m.mate_of_a(v));
          return cyc;
        }
        queue.push_back(x);
      }
    }
  }
  return std::nullopt;
}

/// M xor E(C): each x_{i+1} moves from y_{i+1} to y_i.
inline Matching apply_cycle(const ColoredBipartiteGraph& g, const Matching& m, const AlternatingCycle& cyc) {
  validate_cycle(g, m, cyc);
  Matching out = m;
  for (Vertex x : cyc.xs) out.remove_a(x);
  const std::size_t len = cyc.xs.size();
  for (std::size_t i = 0; i < len; ++i) out.add(cyc.xs[(i + 1) % len], cyc.ys[i]);
  return out;
}

struct RecolorStep {
  Color src;
  Color dst;
  AlternatingCycle cycle;
};

struct RecolorFailure {
  Color src;
  Color dst;
  ColorProfile reached;
};

struct RecolorOutcome {
  Matching final_matching;
  std::vector<RecolorStep> steps;
  std::vector<ColorProfile> trajectory;  // starts with the initial profile
  std::optional<RecolorFailure> failure;

  bool success() const noexcept { return !failure.has_value(); }
};

/// Moves M's profile to the target one unit at a time. Each round swaps
/// from the color with the largest surplus to the color with the largest
/// deficit (lowest index on ties). A round with no swap cycle ends the run
/// with a failure record; this is an expected outcome, not an error.
inline RecolorOutcome recolor_to_target(const ColoredBipartiteGraph& g, const Matching& m, const ColorProfile& target) {
  if (target.q() != g.q()) throw ArgumentError("target has " + std::to_string(target.q()) + " colors, graph has " +
                                               std::to_string(g.q()));
  for (int c : target.counts) {
    if (c < 0) throw ArgumentError("target entries must be nonnegative");
  }
  if (target.total() != g.n()) throw ArgumentError("target must sum to n = " + std::to_string(g.n()));
  validate_matching(g, m);
  if (!is_perfect(g, m)) throw ArgumentError("recoloring needs a perfect matching");

  RecolorOutcome out{m, {}, {profile(g, m)}, std::nullopt};
  while (out.trajectory.back() != target) {
    const ColorProfile& now = out.trajectory.back();
    Color src = 0, dst = 0;
    for (Color c = 1; c < g.q(); ++c) {
      const int diff = now[c] - target[c];
      if (diff > now[src] - target[src]) src = c;
      if (diff < now[dst] - target[dst]) dst = c;
    }
    auto cyc = find_swap_cycle(g, out.final_matching, src, dst);
    if (!cyc) {
      out.failure = RecolorFailure{src, dst, now};
      break;
    }
    out.final_matching = apply_cycle(g, out.final_matching, *cyc);
    ColorProfile next = now;
    --next.counts[src];
    ++next.counts[dst];
    out.steps.push_back(RecolorStep{src, dst, std::move(*cyc)});
    out.trajectory.push_back(std::move(next));
  }
  return out;
}

}  // namespace colormatch

#endif  // COLORMATCH_RECOLOR_HPP
