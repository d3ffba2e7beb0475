// colormatch: command-line front end for generating randomly colored random
// bipartite graphs, matching them, computing color profiles, recoloring
// matchings and running the Monte Carlo checks.
//
// Exit codes: 0 success, 2 argument/parse error, 3 model-domain error,
// 4 structured experiment failure (recolor dead end, invalid matching).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "colormatch/colormatch.hpp"
#include "colormatch/json_io.hpp"

namespace cm = colormatch;

namespace {

constexpr int kExitArgument = 2;
constexpr int kExitModelDomain = 3;
constexpr int kExitExperimentFailure = 4;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
};

// Thrown by subcommands whose run completed but whose outcome is a failure.
struct ExperimentFailure {
  std::string message;
};

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(g.out, std::ios::binary);
  if (!os) throw cm::ArgumentError("cannot open output file " + g.out);
  os << text;
}

std::string dump(const cm::Json& j) { return j.dump(2) + "\n"; }

cm::ColoredBipartiteGraph load_graph(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw cm::ArgumentError("cannot open graph file " + path);
  return cm::read_graph(is);
}

cm::Matching load_matching(const std::string& path, const cm::ColoredBipartiteGraph& g) {
  std::ifstream is(path);
  if (!is) throw cm::ArgumentError("cannot open matching file " + path);
  cm::Matching m = cm::read_matching(is, g.n());
  cm::validate_matching(g, m);
  return m;
}

cm::ColorLaw make_law(const std::vector<double>& alphas, int q) {
  if (!alphas.empty()) return cm::ColorLaw(alphas);
  return cm::ColorLaw::uniform(q);
}

cm::ColorProfile make_profile(const std::vector<int>& counts) { return cm::ColorProfile{counts}; }

// Model flags shared by gen, mcp and the experiment subcommands.
struct ModelFlags {
  int n = 0;
  std::optional<double> omega;
  std::optional<double> p;
  std::vector<double> alpha;
  int q = 2;

  void add_to(CLI::App* sub, bool with_p) {
    sub->add_option("--n", n, "side size");
    sub->add_option("--omega", omega, "offset in p = (ln n + omega)/n; default ln ln n");
    if (with_p) sub->add_option("--p", p, "edge probability (overrides --omega)");
    sub->add_option("--alpha", alpha, "color probabilities, comma separated")->delimiter(',');
    sub->add_option("--q", q, "color count for a uniform law when --alpha is absent");
  }

  cm::ColorLaw law() const { return make_law(alpha, q); }
  double omega_value() const { return omega.value_or(cm::default_omega(n)); }
  double probability() const {
    if (p) {
      if (!(*p > 0.0) || *p > 1.0) throw cm::ModelDomainError("edge probability outside (0,1]");
      return *p;
    }
    return cm::edge_probability(n, omega_value());
  }
  void require_n() const {
    if (n < 2) throw cm::ArgumentError("--n must be at least 2");
  }
};

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  return out + "\n";
}

std::string join(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

std::string num(double v) { return cm::detail::fixed(v); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomly colored random bipartite graphs: matchings and color profiles"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions global;
  app.add_option("--seed", global.seed, "random seed");
  app.add_option("--out", global.out, "output file (default: stdout)");
  app.add_option("--format", global.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  // gen
  ModelFlags gen_model;
  auto* gen = app.add_subcommand("gen", "generate a random colored bipartite graph");
  gen_model.add_to(gen, true);

  // match
  std::string match_graph, match_validate, match_out;
  auto* match = app.add_subcommand("match", "maximum matching of a graph, or validate a matching file");
  match->add_option("--graph", match_graph, "graph file")->required();
  match->add_option("--validate", match_validate, "matching file to re-check against the graph");
  match->add_option("--matching-out", match_out, "also write the matching in text format");

  // mcp
  ModelFlags mcp_model;
  std::string mcp_graph, mcp_method = "dp";
  std::vector<int> mcp_contains;
  int mcp_cap = -1;
  auto* mcp = app.add_subcommand("mcp", "exact matching color profile of a small graph");
  mcp->add_option("--graph", mcp_graph, "graph file (otherwise generate from model flags)");
  mcp_model.add_to(mcp, true);
  mcp->add_option("--method", mcp_method, "dp or brute")->check(CLI::IsMember({"dp", "brute"}));
  mcp->add_option("--contains", mcp_contains, "profile to test for membership")->delimiter(',');
  mcp->add_option("--cap", mcp_cap, "override the size cap of the chosen method");

  // recolor
  std::string rec_graph, rec_matching;
  std::vector<int> rec_target;
  auto* recolor = app.add_subcommand("recolor", "drive a perfect matching to a target color profile");
  recolor->add_option("--graph", rec_graph, "graph file")->required();
  recolor->add_option("--target", rec_target, "target profile m1,m2,...")->required()->delimiter(',');
  recolor->add_option("--matching", rec_matching, "starting perfect matching (default: maximum matching)");

  // trace
  std::string tr_graph, tr_matching;
  int tr_src = 1, tr_dst = 2, tr_a0 = 0;
  double tr_beta = 0.3;
  std::vector<double> tr_alpha;
  auto* trace = app.add_subcommand("trace", "expansion-layer diagnostic for one swap direction");
  trace->add_option("--graph", tr_graph, "graph file")->required();
  trace->add_option("--src", tr_src, "over-subscribed color")->required();
  trace->add_option("--dst", tr_dst, "under-subscribed color")->required();
  trace->add_option("--beta", tr_beta, "beta")->required();
  trace->add_option("--a0", tr_a0, "start vertex in A covered by a dst-colored matching edge")->required();
  trace->add_option("--alpha", tr_alpha, "color probabilities (default uniform)")->delimiter(',');
  trace->add_option("--matching", tr_matching, "perfect matching (default: maximum matching)");

  // audit
  std::string au_graph, au_condition;
  int au_color = 1;
  std::size_t au_trials = 1000;
  cm::LemmaParams au_params;
  std::vector<double> au_alpha;
  auto* audit = app.add_subcommand("audit", "sample witness sets for a structural-lemma condition");
  audit->add_option("--graph", au_graph, "graph file")->required();
  audit->add_option("--condition", au_condition, "a|b|c|d|e|f")->required();
  audit->add_option("--color", au_color, "color index i");
  audit->add_option("--beta", au_params.beta, "beta");
  audit->add_option("--eta", au_params.eta, "eta");
  audit->add_option("--delta", au_params.delta, "delta");
  audit->add_option("--gamma", au_params.gamma, "gamma");
  audit->add_option("--trials", au_trials, "sampled witness families");
  audit->add_option("--alpha", au_alpha, "color probabilities (default uniform)")->delimiter(',');

  // demo-theorem
  ModelFlags demo_model;
  double demo_beta = 0.3;
  std::vector<int> demo_target;
  std::size_t demo_trials = 10;
  bool demo_timing = false;
  auto* demo = app.add_subcommand("demo-theorem", "recolor success frequency for one target profile");
  demo_model.add_to(demo, false);
  demo->add_option("--beta", demo_beta, "beta");
  demo->add_option("--target", demo_target, "target profile m1,m2,...")->required()->delimiter(',');
  demo->add_option("--trials", demo_trials, "trials");
  demo->add_flag("--timing", demo_timing, "include wall-clock runtime (not reproducible)");

  // check-isolated
  ModelFlags iso_model;
  std::size_t iso_trials = 100;
  auto* iso = app.add_subcommand("check-isolated", "frequency of isolated vertices in the color-1 subgraph");
  iso_model.add_to(iso, false);
  iso->add_option("--trials", iso_trials, "trials");

  // check-fullcube
  ModelFlags cube_model;
  std::size_t cube_trials = 50;
  auto* cube = app.add_subcommand("check-fullcube", "monochromatic perfect matchings at p = q(ln n + omega)/(alpha_min n)");
  cube_model.add_to(cube, false);
  cube->add_option("--trials", cube_trials, "trials");

  // sweep
  std::vector<int> sw_n;
  std::vector<std::string> sw_density, sw_targets{"balanced"};
  std::vector<double> sw_alpha;
  int sw_q = 2;
  double sw_beta = 0.3;
  std::size_t sw_trials = 10;
  bool sw_timing = false;
  auto* sweep = app.add_subcommand("sweep", "factorial sweep over n, density and target");
  sweep->add_option("--n", sw_n, "side sizes")->required()->delimiter(',');
  sweep->add_option("--density", sw_density, "densities: c (p = c ln n/n), w:omega or w:lnln")
      ->required()
      ->delimiter(',');
  sweep->add_option("--targets", sw_targets, "balanced, beta-corner")->delimiter(',');
  sweep->add_option("--alpha", sw_alpha, "color probabilities")->delimiter(',');
  sweep->add_option("--q", sw_q, "color count for a uniform law");
  sweep->add_option("--beta", sw_beta, "beta for beta-corner targets");
  sweep->add_option("--trials", sw_trials, "trials per cell");
  sweep->add_flag("--timing", sw_timing, "include wall-clock runtime (not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitArgument;
  }

  const bool csv = global.format == "csv";
  try {
    if (*gen) {
      gen_model.require_n();
      const auto g = cm::generate(gen_model.n, gen_model.probability(), gen_model.law(), global.seed);
      emit(global, cm::serialize(g));
    } else if (*match) {
      const auto g = load_graph(match_graph);
      if (!match_validate.empty()) {
        std::ifstream is(match_validate);
        if (!is) throw cm::ArgumentError("cannot open matching file " + match_validate);
        const cm::Matching m = cm::read_matching(is, g.n());
        cm::Json out{{"n", g.n()}, {"size", m.size()}};
        try {
          cm::validate_matching(g, m);
          out["valid"] = true;
          out["perfect"] = cm::is_perfect(g, m);
          out["profile"] = cm::to_json(cm::profile(g, m));
          emit(global, dump(out));
        } catch (const cm::ConsistencyError& e) {
          out["valid"] = false;
          out["error"] = e.what();
          emit(global, dump(out));
          return kExitExperimentFailure;
        }
      } else {
        const cm::Matching m = cm::maximum_matching(g);
        if (!match_out.empty()) {
          std::ofstream os(match_out, std::ios::binary);
          if (!os) throw cm::ArgumentError("cannot open " + match_out);
          cm::write_matching(os, m);
        }
        const cm::ColorProfile prof = cm::profile(g, m);
        if (csv) {
          emit(global, "n,size,perfect,profile\n" +
                           csv_line({std::to_string(g.n()), std::to_string(m.size()),
                                     cm::is_perfect(g, m) ? "true" : "false", join(prof.counts, ';')}));
        } else {
          emit(global, dump(cm::Json{{"n", g.n()},
                                     {"q", g.q()},
                                     {"size", m.size()},
                                     {"perfect", cm::is_perfect(g, m)},
                                     {"profile", cm::to_json(prof)},
                                     {"pairs", cm::to_json(m)}}));
        }
      }
    } else if (*mcp) {
      cm::Json meta;
      std::optional<cm::ColoredBipartiteGraph> g;
      if (!mcp_graph.empty()) {
        g = load_graph(mcp_graph);
        meta = cm::Json{{"graph", mcp_graph}};
      } else {
        mcp_model.require_n();
        g = cm::generate(mcp_model.n, mcp_model.probability(), mcp_model.law(), global.seed);
        meta = cm::Json{{"seed", global.seed}, {"p", mcp_model.probability()}};
      }
      cm::OracleLimits limits;
      if (mcp_cap >= 0) limits.brute_force_max_n = limits.dp_max_n = mcp_cap;
      const cm::ProfileSet set = mcp_method == "brute" ? cm::mcp_bruteforce(*g, limits) : cm::mcp_subset_dp(*g, limits);
      cm::Json out{{"n", g->n()}, {"q", g->q()}, {"method", mcp_method}};
      for (auto& [k, v] : meta.items()) out[k] = v;
      out["count"] = set.size();
      out["profiles"] = cm::to_json(set);
      if (!mcp_contains.empty()) {
        const auto witness = cm::contains_profile(*g, make_profile(mcp_contains), limits);
        out["contains"] = cm::Json{{"profile", mcp_contains},
                                   {"member", witness.has_value()},
                                   {"witness", witness ? cm::to_json(*witness) : cm::Json(nullptr)}};
      }
      emit(global, dump(out));
    } else if (*recolor) {
      const auto g = load_graph(rec_graph);
      const cm::Matching start = rec_matching.empty() ? cm::maximum_matching(g) : load_matching(rec_matching, g);
      if (!cm::is_perfect(g, start)) {
        emit(global, dump(cm::Json{{"n", g.n()}, {"seed", global.seed}, {"success", false},
                                   {"error", "graph has no perfect matching"}}));
        return kExitExperimentFailure;
      }
      const cm::RecolorOutcome res = cm::recolor_to_target(g, start, make_profile(rec_target));
      cm::Json out{{"n", g.n()}, {"q", g.q()}, {"seed", global.seed}, {"target", rec_target}};
      const cm::Json body = cm::to_json(res);
      for (const auto& [k, v] : body.items()) out[k] = v;
      emit(global, dump(out));
      if (!res.success()) return kExitExperimentFailure;
    } else if (*trace) {
      const auto g = load_graph(tr_graph);
      const cm::Matching m = tr_matching.empty() ? cm::maximum_matching(g) : load_matching(tr_matching, g);
      if (!cm::is_perfect(g, m)) throw cm::ArgumentError("graph has no perfect matching");
      const cm::ColorLaw law = make_law(tr_alpha, g.q());
      if (law.q() != g.q()) throw cm::ArgumentError("--alpha length must equal q");
      const auto t = cm::expansion_trace(g, m, tr_src - 1, tr_dst - 1, tr_beta, law.alpha(tr_dst - 1), tr_a0 - 1);
      emit(global, dump(cm::to_json(t)));
    } else if (*audit) {
      const auto g = load_graph(au_graph);
      const cm::ColorLaw law = make_law(au_alpha, g.q());
      au_params.color = au_color - 1;
      const auto rep = cm::audit_random(g, law, cm::parse_condition(au_condition), au_params, au_trials, global.seed);
      emit(global, dump(cm::to_json(rep)));
    } else if (*demo) {
      demo_model.require_n();
      const auto row = cm::run_theorem_demo(demo_model.n, demo_model.omega_value(), demo_model.law(), demo_beta,
                                            make_profile(demo_target), demo_trials, global.seed,
                                            cm::RunOptions{demo_timing});
      if (csv) {
        std::vector<std::string> head{"n", "omega", "p", "beta", "target", "trials", "pm_freq", "success_given_pm",
                                      "mean_steps"};
        std::vector<std::string> vals{std::to_string(row.n), num(row.omega), num(row.p), num(row.beta),
                                      join(row.target.counts, ';'), std::to_string(row.trials),
                                      num(row.pm_frequency()), num(row.success_given_pm()), num(row.mean_steps)};
        if (row.mean_runtime_ms) {
          head.push_back("mean_runtime_ms");
          vals.push_back(num(*row.mean_runtime_ms));
        }
        emit(global, csv_line(head) + csv_line(vals));
      } else {
        cm::Json out = cm::to_json(row);
        out["seed"] = global.seed;
        emit(global, dump(out));
      }
    } else if (*iso) {
      iso_model.require_n();
      const auto res = cm::run_isolated_vertex_check(iso_model.n, iso_model.omega_value(), iso_model.law(),
                                                     iso_trials, global.seed);
      if (csv) {
        emit(global, csv_line({"n", "omega", "trials", "isolated_count", "frequency"}) +
                         csv_line({std::to_string(iso_model.n), num(iso_model.omega_value()),
                                   std::to_string(res.trials), std::to_string(res.hits), num(res.frequency())}));
      } else {
        emit(global, dump(cm::Json{{"n", iso_model.n},
                                   {"omega", iso_model.omega_value()},
                                   {"seed", global.seed},
                                   {"trials", res.trials},
                                   {"isolated_count", res.hits},
                                   {"frequency", res.frequency()}}));
      }
    } else if (*cube) {
      cube_model.require_n();
      const cm::ColorLaw law = cube_model.law();
      const auto res = cm::run_full_cube_check(cube_model.n, cube_model.omega_value(), law, cube_trials, global.seed);
      std::vector<double> freqs;
      for (cm::Color c = 0; c < law.q(); ++c) freqs.push_back(res.frequency(c));
      if (csv) {
        std::vector<std::string> head{"n", "omega", "p", "trials"};
        std::vector<std::string> vals{std::to_string(cube_model.n), num(cube_model.omega_value()), num(res.p),
                                      std::to_string(res.trials)};
        for (cm::Color c = 0; c < law.q(); ++c) {
          head.push_back("mono_pm_c" + std::to_string(c + 1) + "_freq");
          vals.push_back(num(freqs[c]));
        }
        emit(global, csv_line(head) + csv_line(vals));
      } else {
        emit(global, dump(cm::Json{{"n", cube_model.n},
                                   {"omega", cube_model.omega_value()},
                                   {"p", res.p},
                                   {"seed", global.seed},
                                   {"trials", res.trials},
                                   {"mono_pm_freq", freqs}}));
      }
    } else if (*sweep) {
      cm::SweepSpec spec;
      spec.n_values = sw_n;
      for (const auto& d : sw_density) spec.densities.push_back(cm::parse_density(d));
      spec.law = make_law(sw_alpha, sw_q);
      spec.beta = sw_beta;
      spec.targets = sw_targets;
      spec.trials = sw_trials;
      spec.seed = global.seed;
      const cm::SweepResult res = cm::run_sweep(spec, cm::RunOptions{sw_timing});
      std::ostringstream csv_text;
      cm::write_sweep_csv(csv_text, res);
      const std::string json_text = dump(cm::to_json(res));
      emit(global, csv ? csv_text.str() : json_text);
      if (!global.out.empty()) {
        // The other format goes next to the primary output.
        GlobalOptions mirror = global;
        mirror.out = global.out + (csv ? ".json" : ".csv");
        emit(mirror, csv ? json_text : csv_text.str());
      }
    }
  } catch (const ExperimentFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return kExitExperimentFailure;
  } catch (const cm::ModelDomainError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kExitModelDomain;
  } catch (const cm::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const cm::ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const cm::SizeError& e) {
    std::cerr << "size error: " << e.what() << "\n";
    return kExitArgument;
  } catch (const cm::ConsistencyError& e) {
    std::cerr << "consistency error: " << e.what() << "\n";
    return kExitArgument;
  }
  return 0;
}
