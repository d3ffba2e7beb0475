#ifndef COLORMATCH_JSON_IO_HPP
#define COLORMATCH_JSON_IO_HPP

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "colormatch/expansion_trace.hpp"
#include "colormatch/experiments.hpp"
#include "colormatch/lemma_audit.hpp"
#include "colormatch/matching.hpp"
#include "colormatch/profile_oracle.hpp"
#include "colormatch/recolor.hpp"

// JSON views of library results. Vertices and colors are 1-based, as in the
// text formats.

namespace colormatch {

using Json = nlohmann::ordered_json;

inline Json vertices_json(const std::vector<Vertex>& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(v + 1);
  return out;
}

inline Json to_json(const ColorProfile& m) { return Json(m.counts); }

inline Json to_json(const ProfileSet& s) {
  Json out = Json::array();
  for (const ColorProfile& m : s.profiles) out.push_back(to_json(m));
  return out;
}

inline Json to_json(const Matching& m) {
  Json out = Json::array();
  for (auto [a, b] : m.pairs()) out.push_back(Json::array({a + 1, b + 1}));
  return out;
}

inline Json to_json(const AlternatingCycle& c) {
  return Json{{"src", c.src + 1}, {"dst", c.dst + 1}, {"length", c.length()}, {"x", vertices_json(c.xs)},
              {"y", vertices_json(c.ys)}};
}

inline Json to_json(const RecolorOutcome& r) {
  Json steps = Json::array();
  for (const RecolorStep& s : r.steps) steps.push_back(to_json(s.cycle));
  Json trajectory = Json::array();
  for (const ColorProfile& m : r.trajectory) trajectory.push_back(to_json(m));
  Json out{{"success", r.success()}, {"step_count", r.steps.size()}, {"trajectory", trajectory}, {"steps", steps}};
  if (r.failure) {
    out["failure"] = Json{{"src", r.failure->src + 1}, {"dst", r.failure->dst + 1},
                          {"reached", to_json(r.failure->reached)}};
  } else {
    out["failure"] = nullptr;
  }
  out["final_matching"] = to_json(r.final_matching);
  return out;
}

inline Json to_json(const LemmaConstants& k) {
  return Json{{"log_n", k.log_n},
              {"gamma_a", k.gamma_a},
              {"gamma_b", k.gamma_b},
              {"gamma_d", k.gamma_d},
              {"k", k.k},
              {"k0", k.k0},
              {"low_degree_threshold", k.low_degree_threshold},
              {"growth_factor", k.growth_factor},
              {"layer_goal", k.layer_goal},
              {"growth_cap", k.growth_cap},
              {"w_length_bound", k.w_length_bound}};
}

inline Json to_json(const SideTrace& t) {
  Json layers = Json::array();
  for (const auto& l : t.layers) layers.push_back(vertices_json(l));
  Json images = Json::array();
  for (const auto& l : t.images) images.push_back(vertices_json(l));
  Json layer_sizes = Json::array();
  for (const auto& l : t.layers) layer_sizes.push_back(l.size());
  return Json{{"side", t.side == Side::A ? "A" : "B"},
              {"start", t.start + 1},
              {"start_in_r0", t.start_in_r0},
              {"d0_prime", vertices_json(t.d0_prime)},
              {"d0", vertices_json(t.d0)},
              {"w0", vertices_json(t.w0)},
              {"w_added", vertices_json(t.w_added)},
              {"t_star", t.t_star()},
              {"r0", vertices_json(t.r0)},
              {"layer_sizes", layer_sizes},
              {"layers", layers},
              {"images", images},
              {"growth_checked", t.growth_checked},
              {"growth_ok", t.growth_ok},
              {"reached_goal", t.reached_goal},
              {"stalled", t.stalled}};
}

inline Json to_json(const ExpansionTrace& t) {
  return Json{{"n", t.n},
              {"src", t.src + 1},
              {"dst", t.dst + 1},
              {"beta", t.beta},
              {"alpha_dst", t.alpha_dst},
              {"constants", to_json(t.constants)},
              {"forward", to_json(t.forward)},
              {"mirror", to_json(t.mirror)},
              {"bridge", t.bridge ? Json(*t.bridge + 1) : Json(nullptr)}};
}

inline Json to_json(const WitnessSets& w) {
  return Json{{"S", vertices_json(w.s)}, {"T", vertices_json(w.t)}, {"X", vertices_json(w.x)},
              {"Z", vertices_json(w.z)}};
}

inline Json to_json(const ViolationReport& r) {
  Json violations = Json::array();
  for (const Violation& v : r.violations) {
    violations.push_back(Json{{"source", to_string(v.source)},
                              {"trial", v.trial},
                              {"observed", v.result.observed},
                              {"bound", v.result.bound},
                              {"sets", to_json(v.sets)}});
  }
  return Json{{"condition", std::string(1, condition_letter(r.condition))},
              {"color", r.color + 1},
              {"seed", r.seed},
              {"trials", r.trials},
              {"evaluated", r.evaluated},
              {"pool_evaluated", r.pool_evaluated},
              {"vacuous", r.vacuous},
              {"vacuous_reason", r.vacuous_reason},
              {"adversarial_sampler", r.adversarial_sampler},
              {"violation_count", r.violation_count},
              {"violations", violations}};
}

inline Json to_json(const TheoremDemoRow& r) {
  Json out{{"n", r.n},
           {"omega", r.omega},
           {"p", r.p},
           {"beta", r.beta},
           {"target", to_json(r.target)},
           {"trials", r.trials},
           {"pm_count", r.pm_count},
           {"success_count", r.success_count},
           {"pm_freq", r.pm_frequency()},
           {"success_given_pm", r.success_given_pm()},
           {"mean_steps", r.mean_steps}};
  if (r.mean_runtime_ms) out["mean_runtime_ms"] = *r.mean_runtime_ms;
  return out;
}

inline Json to_json(const SweepResult& s) {
  Json rows = Json::array();
  for (const SweepRow& r : s.rows) {
    Json mono = Json::array();
    for (std::size_t k : r.mono_pm_count) mono.push_back(r.freq(k));
    Json row{{"n", r.n},
             {"density", r.density},
             {"p", r.p},
             {"target_name", r.target_name},
             {"target", to_json(r.target)},
             {"trials", r.trials},
             {"pm_freq", r.freq(r.pm_count)},
             {"recolor_success_freq", r.freq(r.success_count)},
             {"success_given_pm", r.pm_count ? static_cast<double>(r.success_count) / r.pm_count : 0.0},
             {"recolor_failures", r.recolor_failures},
             {"mean_steps", r.mean_steps},
             {"isolated_c1_freq", r.freq(r.isolated_count)},
             {"mono_pm_freq", mono},
             {"status", r.status}};
    if (r.mean_runtime_ms) row["mean_runtime_ms"] = *r.mean_runtime_ms;
    rows.push_back(std::move(row));
  }
  return Json{{"schema", kSweepCsvVersion}, {"q", s.q}, {"rows", rows}};
}

}  // namespace colormatch

#endif  // COLORMATCH_JSON_IO_HPP
