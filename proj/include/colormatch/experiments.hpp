#ifndef COLORMATCH_EXPERIMENTS_HPP
#define COLORMATCH_EXPERIMENTS_HPP

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"
#include "colormatch/matching.hpp"
#include "colormatch/recolor.hpp"
#include "colormatch/rng.hpp"

// Monte Carlo drivers. Every trial draws its graph from its own seed derived
// from the master seed and the trial's coordinates, so results do not depend
// on the order in which trials or cells run.

namespace colormatch {

struct RunOptions {
  bool timing = false;  // wall-clock fields are non-reproducible; off by default
};

/// Outcome of one generate -> match -> recolor pipeline.
struct TrialRecord {
  bool perfect_matching = false;
  bool recolor_success = false;
  std::size_t steps = 0;
  double runtime_ms = 0;
};

/// Generates, matches color-blind, and (when a perfect matching exists)
/// recolors toward the target. A reported success has been re-validated.
inline TrialRecord run_recolor_trial(int n, double p, const ColorLaw& law, const ColorProfile& target,
                                     std::uint64_t seed) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  const ColoredBipartiteGraph g = generate(n, p, law, seed);
  const Matching m = maximum_matching(g);
  rec.perfect_matching = is_perfect(g, m);
  if (rec.perfect_matching) {
    const RecolorOutcome out = recolor_to_target(g, m, target);
    if (out.success()) {
      validate_matching(g, out.final_matching);
      if (!is_perfect(g, out.final_matching) || profile(g, out.final_matching) != target) {
        throw ConsistencyError("recolor reported success without reaching the target");
      }
      rec.recolor_success = true;
    }
    rec.steps = out.steps.size();
  }
  rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

struct TheoremDemoRow {
  int n = 0;
  double omega = 0;
  double p = 0;
  double beta = 0;
  ColorProfile target;
  std::size_t trials = 0;
  std::size_t pm_count = 0;        // trials whose graph had a perfect matching
  std::size_t success_count = 0;   // recolor reached the target
  double mean_steps = 0;           // over successful trials
  std::optional<double> mean_runtime_ms;

  double pm_frequency() const { return trials ? static_cast<double>(pm_count) / trials : 0.0; }
  /// Success frequency among trials that had a perfect matching.
  double success_given_pm() const { return pm_count ? static_cast<double>(success_count) / pm_count : 0.0; }
};

/// Checks the achievability claim at finite n: every target coordinate must
/// be at least ceil(beta n).
inline TheoremDemoRow run_theorem_demo(int n, double omega, const ColorLaw& law, double beta,
                                       const ColorProfile& target, std::size_t trials, std::uint64_t seed,
                                       RunOptions options = {}) {
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  if (!(beta > 0.0 && beta * law.q() < 1.0)) throw ArgumentError("beta must lie in (0, 1/q)");
  if (target.q() != law.q()) throw ArgumentError("target and color law disagree on q");
  if (target.total() != n) throw ArgumentError("target must sum to n");
  const long floor_count = static_cast<long>(std::ceil(beta * n));
  for (int m : target.counts) {
    if (m < floor_count) throw ArgumentError("every target entry must be at least ceil(beta n) = " + std::to_string(floor_count));
  }
  const double p = edge_probability(n, omega);

  TheoremDemoRow row{n, omega, p, beta, target, trials, 0, 0, 0, std::nullopt};
  double steps = 0, runtime = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const TrialRecord rec = run_recolor_trial(n, p, law, target, derive_seed({seed, t}));
    row.pm_count += rec.perfect_matching;
    row.success_count += rec.recolor_success;
    if (rec.recolor_success) steps += static_cast<double>(rec.steps);
    runtime += rec.runtime_ms;
  }
  row.mean_steps = row.success_count ? steps / static_cast<double>(row.success_count) : 0.0;
  if (options.timing) row.mean_runtime_ms = runtime / static_cast<double>(trials);
  return row;
}

inline bool has_isolated_vertex(const ColoredBipartiteGraph& g) {
  for (Side side : {Side::A, Side::B}) {
    for (Vertex v = 0; v < g.n(); ++v) {
      bool isolated = true;
      for (Color c = 0; c < g.q() && isolated; ++c) isolated = g.degree(side, v, c) == 0;
      if (isolated) return true;
    }
  }
  return false;
}

struct FrequencyResult {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double frequency() const { return trials ? static_cast<double>(hits) / trials : 0.0; }
};

/// Fraction of trials whose color-1 subgraph has an isolated vertex on either
/// side; such graphs cannot realize the profile (n, 0, ..., 0).
inline FrequencyResult run_isolated_vertex_check(int n, double omega, const ColorLaw& law, std::size_t trials,
                                                 std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  const double p = edge_probability(n, omega);
  FrequencyResult out{trials, 0};
  for (std::size_t t = 0; t < trials; ++t) {
    const ColoredBipartiteGraph g = generate(n, p, law, derive_seed({seed, t}));
    out.hits += has_isolated_vertex(color_subgraph(g, 0));
  }
  return out;
}

/// p = q (ln n + omega) / (alpha_min n), the density at which every corner
/// n e_i of the profile cube is expected to be realizable.
inline double full_cube_probability(int n, double omega, const ColorLaw& law) {
  const double base = edge_probability(n, omega);
  const double p = law.q() * base / law.alpha_min();
  if (p > 1.0) throw ModelDomainError("edge probability " + std::to_string(p) + " outside (0,1]");
  return p;
}

struct FullCubeResult {
  double p = 0;
  std::size_t trials = 0;
  std::vector<std::size_t> perfect_counts;  // per color

  double frequency(Color c) const {
    return trials ? static_cast<double>(perfect_counts.at(static_cast<std::size_t>(c))) / trials : 0.0;
  }
};

/// Per color, the fraction of trials whose monochromatic subgraph has a
/// perfect matching.
inline FullCubeResult run_full_cube_check(int n, double omega, const ColorLaw& law, std::size_t trials,
                                          std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("trials must be at least 1");
  FullCubeResult out{full_cube_probability(n, omega, law), trials,
                     std::vector<std::size_t>(static_cast<std::size_t>(law.q()), 0)};
  for (std::size_t t = 0; t < trials; ++t) {
    const ColoredBipartiteGraph g = generate(n, out.p, law, derive_seed({seed, t}));
    for (Color c = 0; c < law.q(); ++c) {
      const ColoredBipartiteGraph sub = color_subgraph(g, c);
      out.perfect_counts[c] += is_perfect(sub, maximum_matching(sub));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

/// Edge density of a sweep column: p = c ln n / n, or p = (ln n + omega) / n.
struct DensitySpec {
  enum class Kind { kMultiplier, kOmega } kind = Kind::kMultiplier;
  double value = 1.0;
  bool omega_is_lnln = false;  // omega = ln ln n, resolved per n
  std::string label;

  double probability(int n) const {
    const double ln_n = std::log(static_cast<double>(n));
    if (kind == Kind::kOmega) return edge_probability(n, omega_is_lnln ? std::log(ln_n) : value);
    const double p = value * ln_n / n;
    if (!(p > 0.0) || p > 1.0) throw ModelDomainError("edge probability " + std::to_string(p) + " outside (0,1]");
    return p;
  }
};

/// "1.2" or "c:1.2" -> multiplier; "w:1.5" -> omega = 1.5; "w:lnln" -> omega = ln ln n.
inline DensitySpec parse_density(const std::string& text) {
  DensitySpec d;
  d.label = text;
  std::string body = text;
  if (text.rfind("w:", 0) == 0) {
    d.kind = DensitySpec::Kind::kOmega;
    body = text.substr(2);
    if (body == "lnln") {
      d.omega_is_lnln = true;
      return d;
    }
  } else if (text.rfind("c:", 0) == 0) {
    body = text.substr(2);
  }
  try {
    std::size_t used = 0;
    d.value = std::stod(body, &used);
    if (used != body.size()) throw std::invalid_argument(body);
  } catch (const std::exception&) {
    throw ArgumentError("bad density spec '" + text + "'");
  }
  if (d.kind == DensitySpec::Kind::kMultiplier && !(d.value > 0.0)) {
    throw ArgumentError("density multiplier must be positive");
  }
  return d;
}

/// Named target generators, resolved per (n, q, beta).
///   balanced:    floor(n/q) each, remainder to the lowest colors
///   beta-corner: ceil(beta n) for colors 2..q, the rest on color 1
inline ColorProfile make_target(const std::string& name, int n, int q, double beta) {
  ColorProfile m{std::vector<int>(static_cast<std::size_t>(q), 0)};
  if (name == "balanced") {
    for (int c = 0; c < q; ++c) m.counts[c] = n / q + (c < n % q ? 1 : 0);
  } else if (name == "beta-corner") {
    const int low = static_cast<int>(std::ceil(beta * n));
    if (static_cast<long>(low) * (q - 1) > n) throw ArgumentError("beta-corner target does not fit n");
    for (int c = 1; c < q; ++c) m.counts[c] = low;
    m.counts[0] = n - low * (q - 1);
  } else {
    throw ArgumentError("unknown target generator '" + name + "' (use balanced or beta-corner)");
  }
  return m;
}

struct SweepSpec {
  std::vector<int> n_values;
  std::vector<DensitySpec> densities;
  ColorLaw law = ColorLaw::uniform(2);
  double beta = 0.3;
  std::vector<std::string> targets{"balanced"};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
};

struct SweepRow {
  int n = 0;
  std::string density;
  double p = 0;
  std::string target_name;
  ColorProfile target;
  std::size_t trials = 0;
  std::size_t pm_count = 0;
  std::size_t success_count = 0;
  std::size_t recolor_failures = 0;  // PM existed but recoloring dead-ended
  double mean_steps = 0;
  std::size_t isolated_count = 0;    // color-1 subgraph had an isolated vertex
  std::vector<std::size_t> mono_pm_count;
  std::optional<double> mean_runtime_ms;
  std::string status = "ok";

  double freq(std::size_t k) const { return trials ? static_cast<double>(k) / trials : 0.0; }
};

struct SweepResult {
  int q = 0;
  std::vector<SweepRow> rows;
};

inline SweepRow run_sweep_cell(const SweepSpec& spec, std::size_t n_idx, std::size_t d_idx, std::size_t t_idx,
                               RunOptions options = {}) {
  SweepRow row;
  row.n = spec.n_values.at(n_idx);
  row.density = spec.densities.at(d_idx).label;
  row.target_name = spec.targets.at(t_idx);
  row.trials = spec.trials;
  row.mono_pm_count.assign(static_cast<std::size_t>(spec.law.q()), 0);
  try {
    row.p = spec.densities[d_idx].probability(row.n);
    row.target = make_target(row.target_name, row.n, spec.law.q(), spec.beta);
    double steps = 0, runtime = 0;
    for (std::size_t t = 0; t < spec.trials; ++t) {
      const std::uint64_t seed = derive_seed({spec.seed, static_cast<std::uint64_t>(row.n), d_idx, t_idx, t});
      const auto start = std::chrono::steady_clock::now();
      const ColoredBipartiteGraph g = generate(row.n, row.p, spec.law, seed);
      const Matching m = maximum_matching(g);
      if (is_perfect(g, m)) {
        ++row.pm_count;
        const RecolorOutcome out = recolor_to_target(g, m, row.target);
        if (out.success()) {
          validate_matching(g, out.final_matching);
          if (profile(g, out.final_matching) != row.target) {
            throw ConsistencyError("recolor reported success without reaching the target");
          }
          ++row.success_count;
          steps += static_cast<double>(out.steps.size());
        } else {
          ++row.recolor_failures;
        }
      }
      runtime += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      for (Color c = 0; c < spec.law.q(); ++c) {
        const ColoredBipartiteGraph sub = color_subgraph(g, c);
        if (c == 0) row.isolated_count += has_isolated_vertex(sub);
        row.mono_pm_count[c] += is_perfect(sub, maximum_matching(sub));
      }
    }
    row.mean_steps = row.success_count ? steps / static_cast<double>(row.success_count) : 0.0;
    if (options.timing) row.mean_runtime_ms = runtime / static_cast<double>(spec.trials);
  } catch (const std::exception& e) {
    // A bad cell is recorded and the sweep carries on.
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

/// Full factorial over (n, density, target). Rows come out in that nesting
/// order regardless of how cells are scheduled.
inline SweepResult run_sweep(const SweepSpec& spec, RunOptions options = {}) {
  if (spec.trials < 1) throw ArgumentError("trials must be at least 1");
  if (spec.n_values.empty() || spec.densities.empty() || spec.targets.empty()) {
    throw ArgumentError("sweep needs at least one n, density and target");
  }
  for (int n : spec.n_values) {
    if (n < 2) throw ArgumentError("sweep n values must be at least 2");
  }
  SweepResult out;
  out.q = spec.law.q();
  for (std::size_t i = 0; i < spec.n_values.size(); ++i) {
    for (std::size_t j = 0; j < spec.densities.size(); ++j) {
      for (std::size_t k = 0; k < spec.targets.size(); ++k) out.rows.push_back(run_sweep_cell(spec, i, j, k, options));
    }
  }
  return out;
}

namespace detail {

inline std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline std::string join_counts(const ColorProfile& m, char sep) {
  std::string out;
  for (std::size_t i = 0; i < m.counts.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(m.counts[i]);
  }
  return out;
}

}  // namespace detail

inline constexpr const char* kSweepCsvVersion = "colormatch-sweep-v1";

/// CSV with a version comment line, then a header row. Frequencies are over
/// all trials; success_given_pm conditions on a perfect matching existing.
inline void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  const bool timing = !r.rows.empty() && r.rows.front().mean_runtime_ms.has_value();
  os << "# " << kSweepCsvVersion << "\n";
  os << "n,density,p,target_name,target,trials,pm_freq,recolor_success_freq,success_given_pm,recolor_failures,"
        "mean_steps,isolated_c1_freq";
  for (int c = 0; c < r.q; ++c) os << ",mono_pm_c" << c + 1 << "_freq";
  if (timing) os << ",mean_runtime_ms";
  os << ",status\n";
  for (const SweepRow& row : r.rows) {
    os << row.n << ',' << detail::csv_field(row.density) << ',' << detail::fixed(row.p, 9) << ','
       << row.target_name << ',' << detail::join_counts(row.target, ';') << ',' << row.trials << ','
       << detail::fixed(row.freq(row.pm_count)) << ',' << detail::fixed(row.freq(row.success_count)) << ','
       << detail::fixed(row.pm_count ? static_cast<double>(row.success_count) / row.pm_count : 0.0) << ','
       << row.recolor_failures << ',' << detail::fixed(row.mean_steps, 3) << ','
       << detail::fixed(row.freq(row.isolated_count));
    for (std::size_t c = 0; c < static_cast<std::size_t>(r.q); ++c) {
      os << ',' << detail::fixed(c < row.mono_pm_count.size() ? row.freq(row.mono_pm_count[c]) : 0.0);
    }
    if (timing) os << ',' << detail::fixed(row.mean_runtime_ms.value_or(0.0), 3);
    os << ',' << detail::csv_field(row.status) << '\n';
  }
}

}  // namespace colormatch

#endif  // COLORMATCH_EXPERIMENTS_HPP
