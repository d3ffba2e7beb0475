#ifndef COLORMATCH_PROFILE_ORACLE_HPP
#define COLORMATCH_PROFILE_ORACLE_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/matching.hpp"

namespace colormatch {

/// mcp(G): every profile (m_1..m_q), coordinates in {0..n}, realized by some
/// perfect matching. Sorted lexicographically, no repeats.
struct ProfileSet {
  std::vector<ColorProfile> profiles;

  bool contains(const ColorProfile& m) const {
    return std::binary_search(profiles.begin(), profiles.end(), m);
  }
  std::size_t size() const noexcept { return profiles.size(); }
  bool empty() const noexcept { return profiles.empty(); }

  friend bool operator==(const ProfileSet&, const ProfileSet&) = default;
};

struct OracleLimits {
  int brute_force_max_n = 10;
  int dp_max_n = 14;
};

/// Exact mcp by backtracking over all perfect matchings. Fails loudly past
/// the cap instead of sampling.
inline ProfileSet mcp_bruteforce(const ColoredBipartiteGraph& g, OracleLimits limits = {}) {
  const int n = g.n();
  if (n > limits.brute_force_max_n) {
    throw SizeError("brute-force mcp capped at n = " + std::to_string(limits.brute_force_max_n));
  }
  std::set<std::vector<int>> found;
  std::vector<int> counts(static_cast<std::size_t>(g.q()), 0);
  std::vector<char> used(static_cast<std::size_t>(n), 0);

  auto extend = [&](auto&& self, Vertex a) -> void {
    if (a == n) {
      found.insert(counts);
      return;
    }
    for (const Edge& e : g.edges_at(a)) {
      if (used[e.b]) continue;
      used[e.b] = 1;
      ++counts[e.color];
      self(self, a + 1);
      --counts[e.color];
      used[e.b] = 0;
    }
  };
  extend(extend, 0);

  ProfileSet out;
  for (const auto& c : found) out.profiles.push_back(ColorProfile{c});
  return out;
}

namespace detail {

// Truncated profiles (m_1..m_{q-1}) packed as base-(n+1) digits; m_q is
// implied by the total.
class ProfileCodec {
 public:
  ProfileCodec(int n, int q) : n_(n), q_(q), unit_(static_cast<std::size_t>(q), 0) {
    std::uint64_t place = 1;
    const std::uint64_t base = static_cast<std::uint64_t>(n) + 1;
    for (int c = 0; c + 1 < q; ++c) {
      unit_[c] = place;
      if (place > std::numeric_limits<std::uint64_t>::max() / base) {
        throw SizeError("profile encoding overflows 64 bits for this (n, q)");
      }
      place *= base;
    }
  }

  std::uint64_t unit(Color c) const { return unit_[c]; }

  std::uint64_t encode(const ColorProfile& m) const {
    std::uint64_t code = 0;
    for (int c = 0; c + 1 < q_; ++c) code += unit_[c] * static_cast<std::uint64_t>(m.counts[c]);
    return code;
  }

  ColorProfile decode(std::uint64_t code, int total) const {
    ColorProfile m{std::vector<int>(static_cast<std::size_t>(q_), 0)};
    int rest = total;
    const std::uint64_t base = static_cast<std::uint64_t>(n_) + 1;
    for (int c = 0; c + 1 < q_; ++c) {
      m.counts[c] = static_cast<int>(code % base);
      code /= base;
      rest -= m.counts[c];
    }
    m.counts[q_ - 1] = rest;
    return m;
  }

  // Digit of color c in code.
  int digit(std::uint64_t code, Color c) const {
    if (c == q_ - 1) return std::numeric_limits<int>::max();
    return static_cast<int>((code / unit_[c]) % (static_cast<std::uint64_t>(n_) + 1));
  }

 private:
  int n_;
  int q_;
  std::vector<std::uint64_t> unit_;  // 0 for the last color
};

// reach[mask] = sorted truncated codes achievable by matching A-vertices
// 0..popcount(mask)-1 onto exactly the B-vertices in mask.
inline std::vector<std::vector<std::uint64_t>> profile_dp_table(const ColoredBipartiteGraph& g,
                                                                const ProfileCodec& codec) {
  const int n = g.n();
  const std::size_t states = std::size_t{1} << n;
  std::vector<std::vector<std::uint64_t>> reach(states);
  reach[0].push_back(0);
  // Every predecessor of a mask is numerically smaller, so ascending order
  // finalizes each state before it is read.
  for (std::size_t mask = 0; mask < states; ++mask) {
    auto& here = reach[mask];
    if (here.empty()) continue;
    std::sort(here.begin(), here.end());
    here.erase(std::unique(here.begin(), here.end()), here.end());
    const int a = std::popcount(mask);
    if (a == n) continue;
    for (const Edge& e : g.edges_at(a)) {
      const std::size_t bit = std::size_t{1} << e.b;
      if (mask & bit) continue;
      auto& there = reach[mask | bit];
      const std::uint64_t step = codec.unit(e.color);
      for (std::uint64_t code : here) there.push_back(code + step);
    }
  }
  return reach;
}

inline void check_dp_cap(const ColoredBipartiteGraph& g, const OracleLimits& limits) {
  if (g.n() > limits.dp_max_n) {
    throw SizeError("subset-DP mcp capped at n = " + std::to_string(limits.dp_max_n));
  }
  if (g.n() >= 63) throw SizeError("subset-DP mcp needs n < 63");
}

}  // namespace detail

/// Exact mcp by dynamic programming over subsets of B.
inline ProfileSet mcp_subset_dp(const ColoredBipartiteGraph& g, OracleLimits limits = {}) {
  detail::check_dp_cap(g, limits);
  const detail::ProfileCodec codec(g.n(), g.q());
  const auto reach = detail::profile_dp_table(g, codec);
  ProfileSet out;
  for (std::uint64_t code : reach.back()) out.profiles.push_back(codec.decode(code, g.n()));
  std::sort(out.profiles.begin(), out.profiles.end());
  return out;
}

/// Whether m is in mcp(G); when it is, a perfect matching with profile m
/// recovered by walking the DP table backwards (highest A-vertex first,
/// lowest feasible B-vertex each time).
inline std::optional<Matching> contains_profile(const ColoredBipartiteGraph& g, const ColorProfile& m,
                                                OracleLimits limits = {}) {
  if (m.q() != g.q()) throw ArgumentError("profile has " + std::to_string(m.q()) + " colors, graph has " +
                                          std::to_string(g.q()));
  for (int c : m.counts) {
    if (c < 0) throw ArgumentError("profile entries must be nonnegative");
  }
  if (m.total() != g.n()) throw ArgumentError("profile must sum to n = " + std::to_string(g.n()));
  detail::check_dp_cap(g, limits);

  const detail::ProfileCodec codec(g.n(), g.q());
  const auto reach = detail::profile_dp_table(g, codec);
  std::uint64_t code = codec.encode(m);
  if (!std::binary_search(reach.back().begin(), reach.back().end(), code)) return std::nullopt;

  Matching witness(g.n());
  std::size_t mask = reach.size() - 1;
  for (Vertex a = g.n() - 1; a >= 0; --a) {
    bool stepped = false;
    for (const Edge& e : g.edges_at(a)) {
      const std::size_t bit = std::size_t{1} << e.b;
      if (!(mask & bit) || codec.digit(code, e.color) == 0) continue;
      const std::uint64_t prev = code - codec.unit(e.color);
      const auto& before = reach[mask ^ bit];
      if (!std::binary_search(before.begin(), before.end(), prev)) continue;
      witness.add(a, e.b);
      mask ^= bit;
      code = prev;
      stepped = true;
      break;
    }
    if (!stepped) throw ConsistencyError("profile DP backtrace lost its path");
  }
  return witness;
}

}  // namespace colormatch

#endif  // COLORMATCH_PROFILE_ORACLE_HPP
