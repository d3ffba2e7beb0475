#ifndef COLORMATCH_LEMMA_AUDIT_HPP
#define COLORMATCH_LEMMA_AUDIT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colormatch/constants.hpp"
#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/rng.hpp"

// Evaluators for the six structural predicates on random colored bipartite
// graphs, and a seeded sampler that looks for witnesses of the bad events.
// Sampling gives evidence, not proof: the predicates quantify over all
// subsets.
//
// Set sizes that come out non-integer are rounded up when a set is built and
// stay real-valued in count comparisons.

namespace colormatch {

enum class Condition { kA, kB, kC, kD, kE, kF };

inline constexpr Condition kAllConditions[] = {Condition::kA, Condition::kB, Condition::kC,
                                               Condition::kD, Condition::kE, Condition::kF};

inline char condition_letter(Condition c) { return static_cast<char>('a' + static_cast<int>(c)); }

inline Condition parse_condition(std::string_view s) {
  if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'f') return static_cast<Condition>(s[0] - 'a');
  throw ArgumentError("condition must be one of a, b, c, d, e, f");
}

/// S, X subsets of A; T, Z subsets of B. Unused sets stay empty.
struct WitnessSets {
  std::vector<Vertex> s;
  std::vector<Vertex> t;
  std::vector<Vertex> x;
  std::vector<Vertex> z;

  friend bool operator==(const WitnessSets&, const WitnessSets&) = default;
};

/// Outcome of one predicate on one witness family. `observed` and `bound`
/// mean, per condition:
///   a: e_i(S,T)                                vs 2 alpha eta |S| ln n     (bad if >)
///   b: #x in X with < alpha beta ln n/10 T-nbrs vs |X|                    (bad if all)
///   c: #x in X with >= k Z-nbrs                 vs |X|                    (bad if all)
///   d: #t in T with no S-nbr                    vs gamma_d n / ln n       (bad if >)
///   e: e_i(S,T)                                 vs delta |S| ln n/ln ln n (bad if >=)
///   f: e_i(S,T)                                 vs 0                      (bad if ==)
struct ConditionResult {
  bool holds = true;
  double observed = 0;
  double bound = 0;

  friend bool operator==(const ConditionResult&, const ConditionResult&) = default;
};

namespace detail {

inline std::size_t ceil_size(double v) { return v <= 0 ? 0 : static_cast<std::size_t>(std::ceil(v)); }

inline std::size_t floor_size(double v) { return v <= 0 ? 0 : static_cast<std::size_t>(std::floor(v)); }

inline void check_subset(std::span<const Vertex> sub, std::span<const Vertex> super, const char* what, int n) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : super) in[v] = 1;
  for (Vertex v : sub) {
    if (!in[v]) throw ArgumentError(std::string(what) + " must be a subset");
  }
}

inline double alpha_of(const ColorLaw& law, const ColoredBipartiteGraph& g, const LemmaParams& p) {
  g.check_color(p.color);
  if (law.q() != g.q()) throw ArgumentError("color law and graph disagree on q");
  if (!(p.beta * g.q() < 1.0)) throw ArgumentError("beta must be below 1/q");
  return law.alpha(p.color);
}

struct Feasibility {
  bool feasible = true;
  std::string reason;
};

inline std::size_t x_size_b(std::size_t s, const LemmaConstants& k) {
  return ceil_size(k.gamma_b * static_cast<double>(s) / k.log_n);
}
inline std::size_t x_size_c(std::size_t s, const LemmaConstants& k) {
  return ceil_size(static_cast<double>(s) / k.log_n);
}
inline std::size_t z_size_c(int n, const LemmaConstants& k) { return ceil_size(k.gamma_b * n / k.log_n); }
inline std::size_t t_max_a(std::size_t s, double alpha, double eta, int n, const LemmaConstants& k) {
  return std::min<std::size_t>(static_cast<std::size_t>(n),
                               floor_size(alpha * eta * static_cast<double>(s) * k.log_n));
}

}  // namespace detail

/// Checks a witness family against the size constraints of the condition
/// and evaluates the predicate. Throws ArgumentError naming the violated
/// constraint.
inline ConditionResult evaluate_condition(const ColoredBipartiteGraph& g, const ColorLaw& law, Condition cond,
                                          const WitnessSets& w, const LemmaParams& params) {
  const double alpha = detail::alpha_of(law, g, params);
  const LemmaConstants k = lemma_constants(g.n(), alpha, params);
  const int n = g.n();
  const Color col = params.color;
  const double nn = static_cast<double>(n);
  const double s_size = static_cast<double>(w.s.size());
  const double t_size = static_cast<double>(w.t.size());
  detail::mark_set(g, w.s);
  const std::vector<char> in_t = detail::mark_set(g, w.t);
  detail::mark_set(g, w.x);
  detail::mark_set(g, w.z);

  auto need = [](bool ok, const std::string& rule) {
    if (!ok) throw ArgumentError("witness violates size constraint: " + rule);
  };
  auto edges_st = [&] {
    std::size_t count = 0;
    for (Vertex a : w.s) {
      for (Vertex b : g.neighbors(Side::A, a, col)) count += in_t[b];
    }
    return count;
  };

  ConditionResult r;
  switch (cond) {
    case Condition::kA: {
      need(s_size >= k.gamma_a * k.log_n, "|S| >= gamma_a ln n");
      need(s_size <= k.gamma_a * nn / k.log_n, "|S| <= gamma_a n / ln n");
      need(t_size <= alpha * params.eta * s_size * k.log_n, "|T| <= alpha eta |S| ln n");
      r.observed = static_cast<double>(edges_st());
      r.bound = 2.0 * alpha * params.eta * s_size * k.log_n;
      r.holds = r.observed <= r.bound;
      break;
    }
    case Condition::kB: {
      need(s_size >= params.beta * nn && t_size >= params.beta * nn, "|S|, |T| >= beta n");
      detail::check_subset(w.x, w.s, "X of S", n);
      need(w.x.size() == detail::x_size_b(w.s.size(), k), "|X| = ceil(gamma_b |S| / ln n)");
      std::size_t low = 0;
      for (Vertex a : w.x) {
        std::size_t deg = 0;
        for (Vertex b : g.neighbors(Side::A, a, col)) deg += in_t[b];
        low += static_cast<double>(deg) < k.low_degree_threshold;
      }
      r.observed = static_cast<double>(low);
      r.bound = static_cast<double>(w.x.size());
      r.holds = !(low == w.x.size());
      break;
    }
    case Condition::kC: {
      need(s_size >= params.beta * nn && t_size >= params.beta * nn, "|S|, |T| >= beta n");
      detail::check_subset(w.x, w.s, "X of S", n);
      detail::check_subset(w.z, w.t, "Z of T", n);
      need(w.x.size() == detail::x_size_c(w.s.size(), k), "|X| = ceil(|S| / ln n)");
      need(w.z.size() == detail::z_size_c(n, k), "|Z| = ceil(gamma_b n / ln n)");
      const std::vector<char> in_z = detail::mark_set(g, w.z);
      std::size_t dense = 0;
      for (Vertex a : w.x) {
        std::size_t deg = 0;
        for (Vertex b : g.neighbors(Side::A, a, col)) deg += in_z[b];
        dense += static_cast<double>(deg) >= k.k;
      }
      r.observed = static_cast<double>(dense);
      r.bound = static_cast<double>(w.x.size());
      r.holds = !(dense == w.x.size());
      break;
    }
    case Condition::kD: {
      need(s_size >= params.beta * nn && t_size >= params.beta * nn, "|S|, |T| >= beta n");
      std::vector<char> hit(static_cast<std::size_t>(n), 0);
      for (Vertex a : w.s) {
        for (Vertex b : g.neighbors(Side::A, a, col)) hit[b] = 1;
      }
      std::size_t missed = 0;
      for (Vertex b : w.t) missed += !hit[b];
      r.observed = static_cast<double>(missed);
      r.bound = k.gamma_d * nn / k.log_n;
      r.holds = !(r.observed > r.bound);
      break;
    }
    case Condition::kE: {
      const std::size_t want = detail::ceil_size(params.gamma * nn / k.log_n);
      need(w.s.size() == want && w.t.size() == want, "|S| = |T| = ceil(gamma n / ln n)");
      r.observed = static_cast<double>(edges_st());
      r.bound = params.delta * s_size * k.log_n / std::log(k.log_n);
      r.holds = !(r.observed >= r.bound);
      break;
    }
    case Condition::kF: {
      need(s_size >= params.beta * nn / 10.0 && t_size >= params.beta * nn / 10.0, "|S|, |T| >= beta n / 10");
      r.observed = static_cast<double>(edges_st());
      r.bound = 0;
      r.holds = r.observed != 0;
      break;
    }
  }
  return r;
}

enum class SampleSource { kUniform, kAdversarial, kPool };

inline const char* to_string(SampleSource s) {
  switch (s) {
    case SampleSource::kUniform: return "uniform";
    case SampleSource::kAdversarial: return "adversarial";
    case SampleSource::kPool: return "pool";
  }
  return "?";
}

struct Violation {
  SampleSource source;
  std::size_t trial;  // trial index, or pool index for pool samples
  WitnessSets sets;
  ConditionResult result;
};

struct ViolationReport {
  Condition condition = Condition::kA;
  Color color = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::size_t evaluated = 0;       // sampled families that met the size constraints
  std::size_t pool_evaluated = 0;
  bool vacuous = false;            // no family can meet the size constraints at this n
  std::string vacuous_reason;
  bool adversarial_sampler = false;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;  // first `max_recorded` violations
};

struct AuditOptions {
  std::size_t max_recorded = 16;
  std::span<const WitnessSets> pool = {};
};

namespace detail {

inline double log_choose(double n, double k) {
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

// Index drawn with probability proportional to exp(log_weights[i]).
inline std::size_t sample_log_weighted(SplitMix64& rng, const std::vector<double>& log_weights) {
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  double total = 0;
  for (double lw : log_weights) total += std::exp(lw - top);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    u -= std::exp(log_weights[i] - top);
    if (u < 0) return i;
  }
  return log_weights.size() - 1;
}

inline double log_sum_exp(const std::vector<double>& v) {
  const double top = *std::max_element(v.begin(), v.end());
  double total = 0;
  for (double x : v) total += std::exp(x - top);
  return top + std::log(total);
}

// Uniform k-subset of {0..n-1} via partial Fisher-Yates on a persistent
// permutation buffer, returned sorted.
class SubsetSampler {
 public:
  explicit SubsetSampler(int n) : perm_(static_cast<std::size_t>(n)) {
    std::iota(perm_.begin(), perm_.end(), 0);
  }

  std::vector<Vertex> draw(SplitMix64& rng, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(perm_.size() - i);
      std::swap(perm_[i], perm_[j]);
    }
    std::vector<Vertex> out(perm_.begin(), perm_.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(out.begin(), out.end());
    return out;
  }

  // Uniform k-subset of a given pool.
  static std::vector<Vertex> draw_from(SplitMix64& rng, std::vector<Vertex> pool, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + rng.below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
  }

 private:
  std::vector<Vertex> perm_;
};

// Vertices of one side ordered by ascending color-c degree, ties broken by a
// random key.
inline std::vector<Vertex> by_degree(const ColoredBipartiteGraph& g, Side side, Color c, SplitMix64& rng) {
  std::vector<std::pair<std::pair<std::size_t, std::uint64_t>, Vertex>> keyed;
  keyed.reserve(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) keyed.push_back({{g.degree(side, v, c), rng()}, v});
  std::sort(keyed.begin(), keyed.end());
  std::vector<Vertex> out;
  out.reserve(keyed.size());
  for (const auto& kv : keyed) out.push_back(kv.second);
  return out;
}

// Extends `base` with uniformly chosen vertices not already in it, up to size k.
inline std::vector<Vertex> fill_to(SplitMix64& rng, std::vector<Vertex> base, std::size_t k, int n) {
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  for (Vertex v : base) in[v] = 1;
  if (base.size() < k) {
    std::vector<Vertex> rest;
    for (Vertex v = 0; v < n; ++v) {
      if (!in[v]) rest.push_back(v);
    }
    auto extra = SubsetSampler::draw_from(rng, std::move(rest), k - base.size());
    base.insert(base.end(), extra.begin(), extra.end());
  }
  std::sort(base.begin(), base.end());
  return base;
}

// Draws witness families for one condition, uniformly over all families
// meeting the size constraints, or from the condition's adversarial
// heuristic when it has one.
class WitnessSampler {
 public:
  WitnessSampler(const ColoredBipartiteGraph& g, Condition cond, const LemmaParams& params, double alpha)
      : g_(g), cond_(cond), params_(params), alpha_(alpha), k_(lemma_constants(g.n(), alpha, params)), subsets_(g.n()) {
    plan();
  }

  const Feasibility& feasibility() const { return feasible_; }
  bool has_adversary() const {
    return cond_ == Condition::kA || cond_ == Condition::kB || cond_ == Condition::kD;
  }

  WitnessSets uniform(SplitMix64& rng) {
    WitnessSets w;
    const std::size_t s = s_sizes_[sample_log_weighted(rng, s_weights_)];
    w.s = subsets_.draw(rng, s);
    const std::size_t t = draw_t(rng, s);
    w.t = subsets_.draw(rng, t);
    if (cond_ == Condition::kB) w.x = SubsetSampler::draw_from(rng, w.s, x_size_b(s, k_));
    if (cond_ == Condition::kC) {
      w.x = SubsetSampler::draw_from(rng, w.s, x_size_c(s, k_));
      w.z = SubsetSampler::draw_from(rng, w.t, z_size_c(g_.n(), k_));
    }
    return w;
  }

  WitnessSets adversarial(SplitMix64& rng) {
    const int n = g_.n();
    const Color c = params_.color;
    WitnessSets w;
    switch (cond_) {
      case Condition::kA: {
        // T: the vertices of N_c(S) hit most often from S, as many as allowed.
        const std::size_t s = s_sizes_[sample_log_weighted(rng, s_weights_)];
        w.s = subsets_.draw(rng, s);
        std::vector<std::size_t> hits(static_cast<std::size_t>(n), 0);
        for (Vertex a : w.s) {
          for (Vertex b : g_.neighbors(Side::A, a, c)) ++hits[b];
        }
        std::vector<std::pair<std::pair<std::size_t, std::uint64_t>, Vertex>> keyed;
        for (Vertex b = 0; b < n; ++b) {
          if (hits[b]) keyed.push_back({{hits[b], rng()}, b});
        }
        std::sort(keyed.rbegin(), keyed.rend());
        const std::size_t t = std::min(keyed.size(), t_max_a(s, alpha_, params_.eta, n, k_));
        for (std::size_t i = 0; i < t; ++i) w.t.push_back(keyed[i].second);
        std::sort(w.t.begin(), w.t.end());
        break;
      }
      case Condition::kB: {
        // X: lowest-degree A-vertices; T avoids their neighborhoods first.
        const std::size_t s = jitter(rng, s_sizes_.front(), s_sizes_.back());
        const std::size_t x = x_size_b(s, k_);
        auto order = by_degree(g_, Side::A, c, rng);
        w.x.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(x));
        std::sort(w.x.begin(), w.x.end());
        w.s = fill_to(rng, w.x, s, n);
        w.t = avoid_neighbors(rng, w.x, jitter(rng, t_lo_, t_hi_));
        break;
      }
      case Condition::kD: {
        // S: lowest-degree A-vertices; T: every B-vertex S misses, padded.
        const std::size_t s = jitter(rng, s_sizes_.front(), s_sizes_.back());
        auto order = by_degree(g_, Side::A, c, rng);
        w.s.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(s));
        std::sort(w.s.begin(), w.s.end());
        const std::vector<char> hit = neighbor_mask(w.s);
        for (Vertex b = 0; b < n; ++b) {
          if (!hit[b]) w.t.push_back(b);
        }
        w.t = fill_to(rng, std::move(w.t), std::max(w.t.size(), t_lo_), n);
        break;
      }
      default:
        return uniform(rng);
    }
    return w;
  }

 private:
  void plan() {
    const int n = g_.n();
    const double nn = static_cast<double>(n);
    const double beta_n = params_.beta * nn;
    std::size_t s_lo = 0, s_hi = static_cast<std::size_t>(n);
    t_lo_ = 0;
    t_hi_ = static_cast<std::size_t>(n);
    switch (cond_) {
      case Condition::kA:
        s_lo = std::max<std::size_t>(1, ceil_size(k_.gamma_a * k_.log_n));
        s_hi = std::min(s_hi, floor_size(k_.gamma_a * nn / k_.log_n));
        break;
      case Condition::kB:
      case Condition::kC:
      case Condition::kD:
        s_lo = t_lo_ = ceil_size(beta_n);
        break;
      case Condition::kE:
        s_lo = s_hi = t_lo_ = t_hi_ = ceil_size(params_.gamma * nn / k_.log_n);
        break;
      case Condition::kF:
        s_lo = t_lo_ = ceil_size(beta_n / 10.0);
        break;
    }
    if (cond_ == Condition::kC) t_lo_ = std::max(t_lo_, z_size_c(n, k_));
    for (std::size_t s = s_lo; s <= s_hi; ++s) {
      double lw = log_choose(nn, static_cast<double>(s));
      if (cond_ == Condition::kB) {
        const std::size_t x = x_size_b(s, k_);
        if (x > s) continue;
        lw += log_choose(static_cast<double>(s), static_cast<double>(x));
      } else if (cond_ == Condition::kC) {
        lw += log_choose(static_cast<double>(s), static_cast<double>(x_size_c(s, k_)));
      } else if (cond_ == Condition::kA) {
        lw += log_sum_exp(t_log_weights(s));
      }
      s_sizes_.push_back(s);
      s_weights_.push_back(lw);
    }
    if (s_sizes_.empty()) {
      feasible_ = {false, "no |S| meets the size constraints at this n"};
      return;
    }
    if (cond_ != Condition::kA && t_lo_ > t_hi_) {
      feasible_ = {false, "no |T| meets the size constraints at this n"};
      return;
    }
    if (cond_ != Condition::kA) t_weights_ = t_log_weights(0);
  }

  std::vector<double> t_log_weights(std::size_t s) const {
    const double nn = static_cast<double>(g_.n());
    std::vector<double> out;
    if (cond_ == Condition::kA) {
      const std::size_t hi = t_max_a(s, alpha_, params_.eta, g_.n(), k_);
      for (std::size_t t = 0; t <= hi; ++t) out.push_back(log_choose(nn, static_cast<double>(t)));
      return out;
    }
    for (std::size_t t = t_lo_; t <= t_hi_; ++t) {
      double lw = log_choose(nn, static_cast<double>(t));
      if (cond_ == Condition::kC) lw += log_choose(static_cast<double>(t), static_cast<double>(z_size_c(g_.n(), k_)));
      out.push_back(lw);
    }
    return out;
  }

  std::size_t draw_t(SplitMix64& rng, std::size_t s) const {
    if (cond_ == Condition::kA) return sample_log_weighted(rng, t_log_weights(s));
    return t_lo_ + sample_log_weighted(rng, t_weights_);
  }

  // Size near the lower end of [lo, hi]: the adversaries work best small.
  static std::size_t jitter(SplitMix64& rng, std::size_t lo, std::size_t hi) {
    const std::size_t span = std::min<std::size_t>(hi - lo, std::max<std::size_t>(1, lo / 20));
    return lo + rng.below(span + 1);
  }

  std::vector<char> neighbor_mask(std::span<const Vertex> a_set) const {
    std::vector<char> hit(static_cast<std::size_t>(g_.n()), 0);
    for (Vertex a : a_set) {
      for (Vertex b : g_.neighbors(Side::A, a, params_.color)) hit[b] = 1;
    }
    return hit;
  }

  std::vector<Vertex> avoid_neighbors(SplitMix64& rng, std::span<const Vertex> a_set, std::size_t t) const {
    const std::vector<char> hit = neighbor_mask(a_set);
    std::vector<Vertex> missed;
    for (Vertex b = 0; b < g_.n(); ++b) {
      if (!hit[b]) missed.push_back(b);
    }
    if (missed.size() >= t) return SubsetSampler::draw_from(rng, std::move(missed), t);
    return fill_to(rng, std::move(missed), t, g_.n());
  }

  const ColoredBipartiteGraph& g_;
  Condition cond_;
  LemmaParams params_;
  double alpha_;
  LemmaConstants k_;
  SubsetSampler subsets_;
  Feasibility feasible_;
  std::vector<std::size_t> s_sizes_;
  std::vector<double> s_weights_;
  std::size_t t_lo_ = 0, t_hi_ = 0;
  std::vector<double> t_weights_;
};

}  // namespace detail

/// Seeded search for bad-event witnesses. Pool families are evaluated first;
/// then each trial draws one family, alternating uniform (even trials) and
/// adversarial (odd trials) samplers when the condition has an adversary.
/// Trial t uses its own stream derived from (seed, condition, color, t).
inline ViolationReport audit_random(const ColoredBipartiteGraph& g, const ColorLaw& law, Condition cond,
                                    const LemmaParams& params, std::size_t trials, std::uint64_t seed,
                                    AuditOptions options = {}) {
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  const double alpha = detail::alpha_of(law, g, params);
  ViolationReport rep;
  rep.condition = cond;
  rep.color = params.color;
  rep.seed = seed;
  rep.trials = trials;

  auto record = [&](SampleSource src, std::size_t idx, WitnessSets w, const ConditionResult& r) {
    ++rep.violation_count;
    if (rep.violations.size() < options.max_recorded) rep.violations.push_back({src, idx, std::move(w), r});
  };

  for (std::size_t i = 0; i < options.pool.size(); ++i) {
    const ConditionResult r = evaluate_condition(g, law, cond, options.pool[i], params);
    ++rep.pool_evaluated;
    if (!r.holds) record(SampleSource::kPool, i, options.pool[i], r);
  }

  detail::WitnessSampler sampler(g, cond, params, alpha);
  rep.adversarial_sampler = sampler.has_adversary();
  if (!sampler.feasibility().feasible) {
    rep.vacuous = true;
    rep.vacuous_reason = sampler.feasibility().reason;
    return rep;
  }
  for (std::size_t t = 0; t < trials; ++t) {
    SplitMix64 rng(derive_seed({seed, static_cast<std::uint64_t>(cond), static_cast<std::uint64_t>(params.color), t}));
    const bool adversarial = sampler.has_adversary() && (t % 2 == 1);
    WitnessSets w = adversarial ? sampler.adversarial(rng) : sampler.uniform(rng);
    const ConditionResult r = evaluate_condition(g, law, cond, w, params);
    ++rep.evaluated;
    if (!r.holds) record(adversarial ? SampleSource::kAdversarial : SampleSource::kUniform, t, std::move(w), r);
  }
  return rep;
}

}  // namespace colormatch

#endif  // COLORMATCH_LEMMA_AUDIT_HPP
