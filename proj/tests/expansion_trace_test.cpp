#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace cmtest;

namespace {

struct Instance {
  ColoredBipartiteGraph g;
  Matching m;
  std::vector<Color> color_a;
};

Instance perfect_instance(int n, double p, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    auto g = generate(n, p, ColorLaw({0.5, 0.5}), s);
    Matching m = maximum_matching(g);
    if (!is_perfect(g, m)) continue;
    std::vector<Color> ca(static_cast<std::size_t>(n));
    for (Vertex a = 0; a < n; ++a) ca[a] = *g.color_of(a, m.mate_of_a(a));
    return {std::move(g), std::move(m), std::move(ca)};
  }
}

// Naive restatement of the forward construction for checking trace_side.
struct NaiveForward {
  std::set<Vertex> d0_prime, d0, w, r0;
  std::vector<std::vector<Vertex>> layers;
};

NaiveForward naive_forward(const Instance& s, Color src, Color dst, Vertex a0, const LemmaConstants& k) {
  const auto& g = s.g;
  const int n = g.n();
  NaiveForward out;
  auto mate = [&](Vertex a) { return s.m.mate_of_a(a); };
  auto inv = [&](Vertex b) { return s.m.mate_of_b(b); };
  std::set<Vertex> b_dst;
  for (Vertex a = 0; a < n; ++a) {
    if (s.color_a[a] == dst) b_dst.insert(mate(a));
  }
  for (Vertex a = 0; a < n; ++a) {
    if (s.color_a[a] != dst) continue;
    double deg = 0;
    for (Vertex b : g.neighbors(Side::A, a, dst)) deg += b_dst.count(b);
    if (deg >= k.low_degree_threshold) out.d0_prime.insert(a);
  }
  std::set<Vertex> sparse;  // M(A_dst \ D0')
  for (Vertex a = 0; a < n; ++a) {
    if (s.color_a[a] == dst && !out.d0_prime.count(a)) sparse.insert(mate(a));
  }
  for (Vertex a = 0; a < n; ++a) {
    if (s.color_a[a] != src) continue;
    double hits = 0;
    for (Vertex b : g.neighbors(Side::A, a, dst)) hits += sparse.count(b);
    if (hits <= k.k0) out.d0.insert(a);
    else out.w.insert(a);
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (Vertex a = 0; a < n; ++a) {
      if (s.color_a[a] != dst || out.w.count(a)) continue;
      double hits = 0;
      for (Vertex b : g.neighbors(Side::A, a, dst)) hits += out.w.count(inv(b));
      if (hits >= k.k0) {
        out.w.insert(a);
        grew = true;
      }
    }
  }
  for (Vertex a = 0; a < n; ++a) {
    if (s.color_a[a] == dst && !out.w.count(a)) out.r0.insert(a);
  }
  if (!out.r0.count(a0)) return out;
  std::set<Vertex> used{a0};
  out.layers.push_back({a0});
  while (static_cast<double>(out.layers.back().size()) < k.layer_goal) {
    std::set<Vertex> next;
    for (Vertex a : out.layers.back()) {
      for (Vertex b : g.neighbors(Side::A, a, dst)) {
        const Vertex x = inv(b);
        if (out.r0.count(x) && !used.count(x)) next.insert(x);
      }
    }
    if (next.empty()) break;
    used.insert(next.begin(), next.end());
    out.layers.emplace_back(next.begin(), next.end());
  }
  return out;
}

LemmaConstants tuned(double low, double k0, double goal, double growth, double cap) {
  LemmaConstants k;
  k.low_degree_threshold = low;
  k.k0 = k.k = k0;
  k.layer_goal = goal;
  k.growth_factor = growth;
  k.growth_cap = cap;
  return k;
}

}  // namespace

TEST(TraceSide, MatchesNaiveConstructionWithTunedConstants) {
  int outside_r0 = 0, with_w = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Instance s = perfect_instance(120, 0.06, derive_seed({6, seed}));
    const LemmaConstants k = tuned(1.0 + static_cast<double>(seed % 3), 1.0 + static_cast<double>(seed % 4),
                                   20.0 + static_cast<double>(seed % 15), 1.5, 30.0);
    for (Vertex a0 = 0; a0 < s.g.n(); a0 += 7) {
      if (s.color_a[a0] != 1) continue;
      const SideTrace t = detail::trace_side(s.g, s.m, s.color_a, Side::A, 0, 1, a0, k);
      const NaiveForward ref = naive_forward(s, 0, 1, a0, k);
      EXPECT_EQ(std::set<Vertex>(t.d0_prime.begin(), t.d0_prime.end()), ref.d0_prime);
      EXPECT_EQ(std::set<Vertex>(t.d0.begin(), t.d0.end()), ref.d0);
      std::set<Vertex> w(t.w0.begin(), t.w0.end());
      w.insert(t.w_added.begin(), t.w_added.end());
      EXPECT_EQ(w.size(), t.w0.size() + t.t_star());
      EXPECT_EQ(w, ref.w);
      EXPECT_EQ(std::set<Vertex>(t.r0.begin(), t.r0.end()), ref.r0);
      EXPECT_EQ(t.start_in_r0, ref.r0.count(a0) == 1);
      EXPECT_EQ(t.layers, ref.layers);
      outside_r0 += !t.start_in_r0;
      with_w += t.t_star() > 0;
      if (!t.start_in_r0) {
        EXPECT_TRUE(t.layers.empty());
        continue;
      }
      ASSERT_EQ(t.images.size(), t.layers.size());
      ASSERT_EQ(t.growth_ok.size() + (t.reached_goal ? 1 : 0), t.layers.size());
      for (std::size_t i = 0; i + 1 < t.layers.size(); ++i) {
        const double size = static_cast<double>(t.layers[i].size());
        const bool checked = size <= k.growth_cap;
        EXPECT_EQ(t.growth_checked[i], checked);
        EXPECT_EQ(t.growth_ok[i], !checked || static_cast<double>(t.layers[i + 1].size()) >= k.growth_factor * size);
      }
      EXPECT_NE(t.reached_goal, t.stalled);
    }
  }
  EXPECT_GT(outside_r0, 0);
  EXPECT_GT(with_w, 0);
}

TEST(TraceSide, WSequenceAddsLowestEligibleFirst) {
  const Instance s = perfect_instance(120, 0.06, 3);
  const LemmaConstants k = tuned(2.0, 1.0, 1000.0, 1.0, 1.0);
  std::size_t total_added = 0;
  Vertex a0 = 0;
  while (s.color_a[a0] != 1) ++a0;
  const SideTrace t = detail::trace_side(s.g, s.m, s.color_a, Side::A, 0, 1, a0, k);
  // Replay: at each step the added vertex is the smallest eligible one.
  std::set<Vertex> w(t.w0.begin(), t.w0.end());
  for (Vertex added : t.w_added) {
    Vertex smallest = -1;
    for (Vertex a = 0; a < s.g.n() && smallest < 0; ++a) {
      if (s.color_a[a] != 1 || w.count(a)) continue;
      double hits = 0;
      for (Vertex b : s.g.neighbors(Side::A, a, 1)) hits += w.count(s.m.mate_of_b(b));
      if (hits >= k.k0) smallest = a;
    }
    EXPECT_EQ(smallest, added);
    w.insert(added);
  }
  total_added = t.w_added.size();
  EXPECT_GT(total_added, 0u);
}

TEST(ExpansionTrace, InvariantsOnSmallDegenerateInstance) {
  const Instance s = perfect_instance(30, 0.35, 1);
  const ColorProfile mu = profile(s.g, s.m);
  ASSERT_GE(mu[0], 3);
  ASSERT_GE(mu[1], 3);
  Vertex a0 = 0;
  while (s.color_a[a0] != 1) ++a0;
  const ExpansionTrace t = expansion_trace(s.g, s.m, 0, 1, 0.1, 0.5, a0);
  // ln(30)/10 * 0.05 < 1: every dst-vertex with one dst-neighbor in B_dst is in D0'.
  EXPECT_LT(t.constants.low_degree_threshold, 1.0);
  EXPECT_LT(t.constants.low_degree_threshold - t.constants.k0, 0.0);
  EXPECT_TRUE(t.forward.w0.empty());  // k0 > n: nobody exceeds it
  EXPECT_EQ(t.forward.start, a0);
  EXPECT_EQ(t.mirror.start, s.m.mate_of_a(a0));
  ASSERT_TRUE(t.forward.start_in_r0);
  EXPECT_EQ(t.forward.layers.front(), std::vector<Vertex>{a0});
  // X_{i+1} is inside R0, disjoint from earlier layers, and inside M^-1(Y_i).
  std::set<Vertex> r0(t.forward.r0.begin(), t.forward.r0.end()), seen;
  for (std::size_t i = 0; i < t.forward.layers.size(); ++i) {
    for (Vertex x : t.forward.layers[i]) {
      EXPECT_TRUE(r0.count(x));
      EXPECT_TRUE(seen.insert(x).second);
      if (i > 0) {
        const auto& y = t.forward.images[i - 1];
        EXPECT_TRUE(std::binary_search(y.begin(), y.end(), s.m.mate_of_a(x)));
      }
    }
  }
  for (Vertex b : t.mirror.r0) EXPECT_EQ(*s.g.color_of(s.m.mate_of_b(b), b), 1);
}

TEST(ExpansionTrace, PreconditionErrors) {
  const Instance s = perfect_instance(30, 0.35, 1);
  Vertex a_dst = 0, a_src = 0;
  while (s.color_a[a_dst] != 1) ++a_dst;
  while (s.color_a[a_src] != 0) ++a_src;
  EXPECT_THROW(expansion_trace(s.g, s.m, 0, 1, 0.1, 0.5, a_src), ArgumentError);
  EXPECT_THROW(expansion_trace(s.g, s.m, 0, 0, 0.1, 0.5, a_dst), ArgumentError);
  EXPECT_THROW(expansion_trace(s.g, s.m, 0, 1, 0.5, 0.5, a_dst), ArgumentError);
  const ColorProfile mu = profile(s.g, s.m);
  const int low = std::min(mu[0], mu[1]);
  if (low < 15) {
    // beta n just above the smaller color count
    EXPECT_THROW(expansion_trace(s.g, s.m, 0, 1, (low + 0.5) / 30.0, 0.5, a_dst), ArgumentError);
  }
  Matching partial = s.m;
  partial.remove_a(a_src);
  EXPECT_THROW(expansion_trace(s.g, partial, 0, 1, 0.1, 0.5, a_dst), ArgumentError);
}

TEST(ExpansionTrace, ModerateInstanceReachesGoal) {
  const int n = 2000;
  const Instance s = perfect_instance(n, edge_probability(n, default_omega(n)), 2000);
  int reached = 0, tried = 0;
  for (Vertex a0 = 0; a0 < n && tried < 5; ++a0) {
    if (s.color_a[a0] != 1) continue;
    const ExpansionTrace t = expansion_trace(s.g, s.m, 0, 1, 0.3, 0.5, a0);
    EXPECT_LE(static_cast<double>(t.forward.t_star()), t.constants.w_length_bound);
    if (!t.forward.start_in_r0) continue;
    ++tried;
    reached += t.forward.reached_goal && t.forward.all_growth_ok();
  }
  EXPECT_EQ(tried, 5);
  EXPECT_GE(reached, 4);
}
