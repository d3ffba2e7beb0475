#ifndef COLORMATCH_MATCHING_HPP
#define COLORMATCH_MATCHING_HPP

#include <algorithm>
#include <compare>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"

namespace colormatch {

inline constexpr Vertex kUnmatched = -1;

/// Partial injection A -> B, stored from both ends.
class Matching {
 public:
  Matching() = default;
  explicit Matching(int n) : mate_a_(static_cast<std::size_t>(n), kUnmatched), mate_b_(static_cast<std::size_t>(n), kUnmatched) {}

  int n() const noexcept { return static_cast<int>(mate_a_.size()); }
  std::size_t size() const noexcept { return size_; }

  Vertex mate_of_a(Vertex a) const { return mate_a_.at(static_cast<std::size_t>(a)); }
  Vertex mate_of_b(Vertex b) const { return mate_b_.at(static_cast<std::size_t>(b)); }

  bool contains(Vertex a, Vertex b) const { return mate_of_a(a) == b; }

  /// Adds pair (a, b); both ends must currently be free.
  void add(Vertex a, Vertex b) {
    check(a);
    check(b);
    if (mate_a_[a] != kUnmatched || mate_b_[b] != kUnmatched) {
      throw ConsistencyError("pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) +
                             ") conflicts with the matching");
    }
    mate_a_[a] = b;
    mate_b_[b] = a;
    ++size_;
  }

  void remove_a(Vertex a) {
    check(a);
    const Vertex b = mate_a_[a];
    if (b == kUnmatched) return;
    mate_a_[a] = kUnmatched;
    mate_b_[b] = kUnmatched;
    --size_;
  }

  /// Matched pairs in ascending order of a.
  std::vector<std::pair<Vertex, Vertex>> pairs() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(size_);
    for (Vertex a = 0; a < n(); ++a) {
      if (mate_a_[a] != kUnmatched) out.emplace_back(a, mate_a_[a]);
    }
    return out;
  }

  friend bool operator==(const Matching& x, const Matching& y) { return x.mate_a_ == y.mate_a_; }

 private:
  void check(Vertex v) const {
    if (v < 0 || v >= n()) throw ArgumentError("vertex " + std::to_string(v + 1) + " out of range");
  }

  std::vector<Vertex> mate_a_;
  std::vector<Vertex> mate_b_;
  std::size_t size_ = 0;
};

/// Per-color edge counts (m_1, ..., m_q) of a matching.
struct ColorProfile {
  std::vector<int> counts;

  int q() const noexcept { return static_cast<int>(counts.size()); }
  long total() const noexcept { return std::accumulate(counts.begin(), counts.end(), 0L); }
  int operator[](Color c) const { return counts.at(static_cast<std::size_t>(c)); }

  friend auto operator<=>(const ColorProfile&, const ColorProfile&) = default;
};

inline std::string to_string(const ColorProfile& m) {
  std::string out = "(";
  for (std::size_t i = 0; i < m.counts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(m.counts[i]);
  }
  return out + ")";
}

/// Throws ConsistencyError unless every pair of m is an edge of g and the
/// sides agree.
inline void validate_matching(const ColoredBipartiteGraph& g, const Matching& m) {
  if (m.n() != g.n()) throw ConsistencyError("matching and graph sizes differ");
  std::size_t seen = 0;
  for (Vertex a = 0; a < g.n(); ++a) {
    const Vertex b = m.mate_of_a(a);
    if (b == kUnmatched) continue;
    ++seen;
    if (m.mate_of_b(b) != a) throw ConsistencyError("matching is not injective");
    if (!g.color_of(a, b)) {
      throw ConsistencyError("pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ") is not an edge");
    }
  }
  if (seen != m.size()) throw ConsistencyError("matching size bookkeeping is inconsistent");
}

inline ColorProfile profile(const ColoredBipartiteGraph& g, const Matching& m) {
  if (m.n() != g.n()) throw ConsistencyError("matching and graph sizes differ");
  ColorProfile out{std::vector<int>(static_cast<std::size_t>(g.q()), 0)};
  for (auto [a, b] : m.pairs()) {
    const auto c = g.color_of(a, b);
    if (!c) throw ConsistencyError("pair (" + std::to_string(a + 1) + ", " + std::to_string(b + 1) + ") is not an edge");
    ++out.counts[*c];
  }
  return out;
}

inline bool is_perfect(const ColoredBipartiteGraph& g, const Matching& m) {
  return m.n() == g.n() && m.size() == static_cast<std::size_t>(g.n());
}

/// Hopcroft-Karp maximum-cardinality matching, O(|E| sqrt(n)).
///
/// Colors are ignored. Free A-vertices are scanned in ascending order and
/// each vertex's edges in canonical (ascending b) order, so the result is a
/// deterministic function of the graph.
inline Matching maximum_matching(const ColoredBipartiteGraph& g) {
  const int n = g.n();
  Matching m(n);
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<Vertex> queue;
  queue.reserve(static_cast<std::size_t>(n));
  int free_layer = kInf;  // length of the shortest augmenting paths this phase

  // Layered BFS from free A-vertices; true if some free B-vertex is reachable.
  auto bfs = [&] {
    queue.clear();
    for (Vertex a = 0; a < n; ++a) {
      if (m.mate_of_a(a) == kUnmatched) {
        dist[a] = 0;
        queue.push_back(a);
      } else {
        dist[a] = kInf;
      }
    }
    free_layer = kInf;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex a = queue[head];
      if (dist[a] >= free_layer) break;
      for (const Edge& e : g.edges_at(a)) {
        const Vertex next = m.mate_of_b(e.b);
        if (next == kUnmatched) {
          free_layer = std::min(free_layer, dist[a] + 1);
        } else if (dist[next] == kInf) {
          dist[next] = dist[a] + 1;
          queue.push_back(next);
        }
      }
    }
    return free_layer != kInf;
  };

  // Iterative DFS along the layering; edge cursors persist across roots
  // within a phase.
  std::vector<std::size_t> cursor(static_cast<std::size_t>(n));
  std::vector<Vertex> stack;
  auto augment_from = [&](Vertex root) {
    stack.assign(1, root);
    while (!stack.empty()) {
      const Vertex a = stack.back();
      auto row = g.edges_at(a);
      bool advanced = false;
      while (cursor[a] < row.size()) {
        const Vertex b = row[cursor[a]].b;
        const Vertex next = m.mate_of_b(b);
        if (next == kUnmatched && dist[a] + 1 == free_layer) {
          // Flip the path root .. a, b.
          Vertex free_b = b;
          for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            const Vertex x = *it;
            const Vertex old = m.mate_of_a(x);
            m.remove_a(x);
            m.add(x, free_b);
            free_b = old;
          }
          return true;
        }
        if (next != kUnmatched && dist[next] == dist[a] + 1) {
          ++cursor[a];
          stack.push_back(next);
          advanced = true;
          break;
        }
        ++cursor[a];
      }
      if (!advanced) {
        dist[a] = kInf;
        stack.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (Vertex a = 0; a < n; ++a) {
      if (m.mate_of_a(a) == kUnmatched) augment_from(a);
    }
  }
  return m;
}

}  // namespace colormatch

#endif  // COLORMATCH_MATCHING_HPP
