#ifndef COLORMATCH_EXPANSION_TRACE_HPP
#define COLORMATCH_EXPANSION_TRACE_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "colormatch/constants.hpp"
#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/matching.hpp"

// Diagnostic replay of the layered expansion behind the swap-cycle argument.
// Everything is computed with the real-valued thresholds of LemmaConstants;
// nothing here is used by the cycle search itself.

namespace colormatch {

/// One direction of the construction. For the forward direction the "own"
/// side is A and layers X_i grow through Y_i = N_dst(X_i) and M^-1; the
/// mirrored direction swaps the roles of A and B.
struct SideTrace {
  Side side = Side::A;
  Vertex start = kUnmatched;
  std::vector<Vertex> d0_prime;  // own dst-vertices with dst-degree into the mated dst set >= low threshold
  std::vector<Vertex> d0;        // own src-vertices with at most k0 dst-neighbors among mates of non-D0' dst-vertices
  std::vector<Vertex> w0;        // own src-vertices outside D0
  std::vector<Vertex> w_added;   // own dst-vertices appended to the W-sequence, in order
  std::vector<Vertex> r0;        // own dst-vertices never added to W
  bool start_in_r0 = false;
  std::vector<std::vector<Vertex>> layers;  // X_0, X_1, ... (own side)
  std::vector<std::vector<Vertex>> images;  // Y_i = N_dst(X_i) (opposite side)
  std::vector<bool> growth_checked;         // |X_i| <= growth_cap, so the growth bound applies to X_i -> X_{i+1}
  std::vector<bool> growth_ok;
  bool reached_goal = false;
  bool stalled = false;

  std::size_t t_star() const noexcept { return w_added.size(); }
  bool all_growth_ok() const {
    for (bool ok : growth_ok) {
      if (!ok) return false;
    }
    return true;
  }
};

struct ExpansionTrace {
  int n = 0;
  Color src = 0;
  Color dst = 0;
  double beta = 0;
  double alpha_dst = 0;
  LemmaConstants constants;
  SideTrace forward;  // from a0
  SideTrace mirror;   // from b0 = M(a0)
  // An src-colored matching edge (x0, M(x0)) with x0 dst-adjacent to some
  // mirror layer and M(x0) dst-adjacent to some forward layer, when present.
  std::optional<Vertex> bridge;
};

namespace detail {

inline Vertex mate_on(const Matching& m, Side side, Vertex v) {
  return side == Side::A ? m.mate_of_a(v) : m.mate_of_b(v);
}

inline SideTrace trace_side(const ColoredBipartiteGraph& g, const Matching& m, const std::vector<Color>& own_color,
                            Side own, Color src, Color dst, Vertex start, const LemmaConstants& k) {
  const int n = g.n();
  const Side other = opposite(own);
  SideTrace t;
  t.side = own;
  t.start = start;

  std::vector<char> in_other_dst(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (own_color[v] == dst) in_other_dst[mate_on(m, own, v)] = 1;
  }
  std::vector<char> in_d0_prime(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (own_color[v] != dst) continue;
    std::size_t deg = 0;
    for (Vertex w : g.neighbors(own, v, dst)) deg += in_other_dst[w];
    if (static_cast<double>(deg) >= k.low_degree_threshold) {
      t.d0_prime.push_back(v);
      in_d0_prime[v] = 1;
    }
  }
  // Mates of the low-degree dst-vertices.
  std::vector<char> sparse_mate(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (own_color[v] == dst && !in_d0_prime[v]) sparse_mate[mate_on(m, own, v)] = 1;
  }
  std::vector<char> in_w(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (own_color[v] != src) continue;
    std::size_t hits = 0;
    for (Vertex w : g.neighbors(own, v, dst)) hits += sparse_mate[w];
    if (static_cast<double>(hits) <= k.k0) {
      t.d0.push_back(v);
    } else {
      t.w0.push_back(v);
      in_w[v] = 1;
    }
  }

  // W-sequence: repeatedly add the lowest-index own dst-vertex outside W with
  // at least k0 dst-neighbors among M(W).
  std::vector<std::size_t> hits_into_w(static_cast<std::size_t>(n), 0);
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> ready;
  std::vector<char> queued(static_cast<std::size_t>(n), 0);
  auto absorb = [&](Vertex w) {
    for (Vertex u : g.neighbors(other, mate_on(m, own, w), dst)) {
      ++hits_into_w[u];
      if (own_color[u] == dst && !in_w[u] && !queued[u] && static_cast<double>(hits_into_w[u]) >= k.k0) {
        queued[u] = 1;
        ready.push(u);
      }
    }
  };
  for (Vertex w : t.w0) absorb(w);
  while (!ready.empty()) {
    const Vertex v = ready.top();
    ready.pop();
    in_w[v] = 1;
    t.w_added.push_back(v);
    absorb(v);
  }
  std::vector<char> in_r0(static_cast<std::size_t>(n), 0);
  for (Vertex v = 0; v < n; ++v) {
    if (own_color[v] == dst && !in_w[v]) {
      t.r0.push_back(v);
      in_r0[v] = 1;
    }
  }
  t.start_in_r0 = in_r0[start] != 0;
  if (!t.start_in_r0) return t;

  std::vector<char> used(static_cast<std::size_t>(n), 0);
  used[start] = 1;
  t.layers.push_back({start});
  while (true) {
    const auto& layer = t.layers.back();
    const double size = static_cast<double>(layer.size());
    t.images.push_back(neighbors_colored(g, own, layer, dst));
    if (size >= k.layer_goal) {
      t.reached_goal = true;
      break;
    }
    std::vector<Vertex> next;
    for (Vertex w : t.images.back()) {
      const Vertex v = mate_on(m, other, w);
      if (in_r0[v] && !used[v]) {
        used[v] = 1;
        next.push_back(v);
      }
    }
    std::sort(next.begin(), next.end());
    const bool checked = size <= k.growth_cap;
    t.growth_checked.push_back(checked);
    t.growth_ok.push_back(!checked || static_cast<double>(next.size()) >= k.growth_factor * size);
    if (next.empty()) {
      t.stalled = true;
      break;
    }
    t.layers.push_back(std::move(next));
  }
  return t;
}

}  // namespace detail

/// Replays the expansion construction for the swap src -> dst from a0 in
/// A_dst, and mirrored from b0 = M(a0). A start outside R0 is recorded in
/// the trace rather than thrown.
inline ExpansionTrace expansion_trace(const ColoredBipartiteGraph& g, const Matching& m, Color src, Color dst,
                                      double beta, double alpha_dst, Vertex a0) {
  g.check_color(src);
  g.check_color(dst);
  g.check_vertex(a0);
  if (src == dst) throw ArgumentError("src and dst colors must differ");
  if (!(beta > 0.0 && beta * g.q() < 1.0)) throw ArgumentError("beta must lie in (0, 1/q)");
  validate_matching(g, m);
  if (!is_perfect(g, m)) throw ArgumentError("expansion trace needs a perfect matching");
  const ColorProfile mu = profile(g, m);
  const double floor_size = beta * g.n();
  if (mu[src] < floor_size || mu[dst] < floor_size) {
    throw ArgumentError("both colors need at least beta*n matching edges");
  }

  std::vector<Color> color_a(static_cast<std::size_t>(g.n()));
  std::vector<Color> color_b(static_cast<std::size_t>(g.n()));
  for (Vertex a = 0; a < g.n(); ++a) {
    const Vertex b = m.mate_of_a(a);
    color_a[a] = color_b[b] = *g.color_of(a, b);
  }
  if (color_a[a0] != dst) throw ArgumentError("a0 must be covered by a dst-colored matching edge");

  LemmaParams params;
  params.beta = beta;
  params.color = dst;
  ExpansionTrace out;
  out.n = g.n();
  out.src = src;
  out.dst = dst;
  out.beta = beta;
  out.alpha_dst = alpha_dst;
  out.constants = lemma_constants(g.n(), alpha_dst, params);
  out.forward = detail::trace_side(g, m, color_a, Side::A, src, dst, a0, out.constants);
  out.mirror = detail::trace_side(g, m, color_b, Side::B, src, dst, m.mate_of_a(a0), out.constants);

  std::vector<char> fwd(static_cast<std::size_t>(g.n()), 0);
  std::vector<char> mir(static_cast<std::size_t>(g.n()), 0);
  for (const auto& layer : out.forward.layers) {
    for (Vertex v : layer) fwd[v] = 1;
  }
  for (const auto& layer : out.mirror.layers) {
    for (Vertex v : layer) mir[v] = 1;
  }
  for (Vertex x = 0; x < g.n() && !out.bridge; ++x) {
    if (color_a[x] != src) continue;
    bool to_mirror = false, to_forward = false;
    for (Vertex b : g.neighbors(Side::A, x, dst)) to_mirror = to_mirror || mir[b];
    for (Vertex a : g.neighbors(Side::B, m.mate_of_a(x), dst)) to_forward = to_forward || fwd[a];
    if (to_mirror && to_forward) out.bridge = x;
  }
  return out;
}

}  // namespace colormatch

#endif  // COLORMATCH_EXPANSION_TRACE_HPP
