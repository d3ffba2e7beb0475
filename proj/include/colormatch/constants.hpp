#ifndef COLORMATCH_CONSTANTS_HPP
#define COLORMATCH_CONSTANTS_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "colormatch/errors.hpp"
#include "colormatch/graph.hpp"

namespace colormatch {

/// Parameters of the structural-lemma predicates. beta < 1/q is checked
/// wherever the color count is known.
struct LemmaParams {
  double beta = 0.3;
  double eta = 1.0;
  double delta = 5.0;
  double gamma = 2.0;
  Color color = 0;
};

/// Thresholds of the structural lemma and the expansion argument, evaluated
/// at a given n and color share alpha. Logs are natural.
struct LemmaConstants {
  double log_n = 0;
  double gamma_a = 0;               // eta / (20 alpha)
  double gamma_b = 0;               // 10 ln(e/beta) / alpha
  double gamma_d = 0;               // (4/alpha) ln(e/beta)
  double k = 0;                     // 10 ln n / ln ln n
  double k0 = 0;                    // same formula, used by the D0 / W filters
  double low_degree_threshold = 0;  // alpha beta ln n / 10
  double growth_factor = 0;         // alpha beta ln n / 25
  double layer_goal = 0;            // alpha beta n / 5000
  double growth_cap = 0;            // n / (200 ln n): layers up to this size must grow
  double w_length_bound = 0;        // 4 n / ln n
};

inline void check_lemma_params(const LemmaParams& p) {
  if (!(p.beta > 0.0 && p.beta < 1.0)) throw ArgumentError("beta must lie in (0, 1)");
  if (!(p.eta > 0.0)) throw ArgumentError("eta must be positive");
  if (!(p.delta > 0.0)) throw ArgumentError("delta must be positive");
  if (!(p.gamma > 0.0)) throw ArgumentError("gamma must be positive");
}

/// n is real so the formulas can be probed between integers.
inline LemmaConstants lemma_constants(double n, double alpha, const LemmaParams& params) {
  if (!(n >= 3.0)) throw ModelDomainError("constants need n >= 3 so that ln ln n > 0");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ArgumentError("alpha must lie in (0, 1]");
  check_lemma_params(params);
  const double nn = n;
  const double ln_n = std::log(nn);
  const double ln_ln_n = std::log(ln_n);
  const double log_e_over_beta = 1.0 - std::log(params.beta);
  LemmaConstants c;
  c.log_n = ln_n;
  c.gamma_a = params.eta / (20.0 * alpha);
  c.gamma_b = 10.0 * log_e_over_beta / alpha;
  c.gamma_d = 4.0 / alpha * log_e_over_beta;
  c.k = 10.0 * ln_n / ln_ln_n;
  c.k0 = c.k;
  c.low_degree_threshold = alpha * params.beta * ln_n / 10.0;
  c.growth_factor = alpha * params.beta * ln_n / 25.0;
  c.layer_goal = alpha * params.beta * nn / 5000.0;
  c.growth_cap = nn / (200.0 * ln_n);
  c.w_length_bound = 4.0 * nn / ln_n;
  return c;
}

}  // namespace colormatch

#endif  // COLORMATCH_CONSTANTS_HPP
