#ifndef COLORMATCH_TEST_SUPPORT_HPP
#define COLORMATCH_TEST_SUPPORT_HPP

#include <algorithm>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "colormatch/colormatch.hpp"

namespace cmtest {

using namespace colormatch;

struct E1 {
  int a, b, c;  // 1-based, as written in graph files
};

inline ColoredBipartiteGraph graph1(int n, int q, std::initializer_list<E1> edges) {
  std::vector<Edge> es;
  for (const E1& e : edges) es.push_back({e.a - 1, e.b - 1, e.c - 1});
  return ColoredBipartiteGraph(n, q, std::move(es));
}

inline Matching matching1(int n, std::initializer_list<std::pair<int, int>> pairs) {
  Matching m(n);
  for (auto [a, b] : pairs) m.add(a - 1, b - 1);
  return m;
}

inline ColorProfile prof(std::initializer_list<int> counts) { return ColorProfile{std::vector<int>(counts)}; }

// Random small instance with an explicit edge probability.
inline ColoredBipartiteGraph random_small(int n, int q, double p, std::uint64_t seed) {
  return generate(n, p, ColorLaw::uniform(q), seed);
}

// Every perfect matching of a small graph, by permutation enumeration.
template <class F>
void for_each_perfect_matching(const ColoredBipartiteGraph& g, F&& visit) {
  std::vector<Vertex> perm(static_cast<std::size_t>(g.n()));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (Vertex a = 0; a < g.n() && ok; ++a) ok = g.color_of(a, perm[a]).has_value();
    if (!ok) continue;
    Matching m(g.n());
    for (Vertex a = 0; a < g.n(); ++a) m.add(a, perm[a]);
    visit(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace cmtest

#endif  // COLORMATCH_TEST_SUPPORT_HPP
