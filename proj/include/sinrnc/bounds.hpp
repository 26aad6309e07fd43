#pragma once

#include <cstddef>
#include <span>

namespace sinrnc::bounds {

// Relative band half-widths around a mean: values are expected inside
// [(1 - lower) * mean, (1 + upper) * mean].
struct Epsilons {
  double lower = 0.0;
  double upper = 0.0;
  double mean = 0.0;           // E[J] = (n-1) E[L], or E[I] = (n-1) E[P] E[L]
  bool lower_vacuous = false;  // lower >= 1, so the lower band edge is <= 0
};

// eps1 = sqrt(4 ln n / ((n-1) E[L])), eps1' = sqrt(6 ln n / ((n-1) E[L])).
Epsilons lemma1_epsilons(std::size_t n, double mean_gain);

// As lemma1_epsilons with E[P] E[L] in place of E[L].
Epsilons lemma3_epsilons(std::size_t n, double mean_power, double mean_gain);

enum class Tail { kLower, kUpper };

// Chernoff tail for a sum with the given mean: exp(-mean eps^2 / 2) below,
// exp(-mean eps^2 / 3) above. The lower side needs eps < 1.
double chernoff_tail(double mean, double eps, Tail side);

// Azuma: exp(-lambda^2 / (2 sum c_i^2)), same for both tails.
double azuma_bound(double lambda, std::span<const double> increments);

struct BoundParams {
  std::size_t n = 2;
  std::size_t m = 2;
  std::size_t l = 1;
  std::size_t h = 1;
  double mean_gain = 0.0;   // E[L], empirical
  double mean_power = 0.0;  // E[P], empirical
  double cbar = 0.0;
  double eta = 1.0;
  double rate = 1.0;
  double alpha_exp = 1.0;  // tail exponent, unrelated to the path-loss exponent
};

struct TheoremEpsilons {
  double constant_lower = 0.0;  // eps'_alpha  = sqrt(2 a ln m / E[C0])
  double constant_upper = 0.0;  // eps''_alpha = sqrt(3 a ln m / E[C0])
  double heterogeneous = 0.0;   // eps_alpha   = (eta+1) R sqrt(2 a m ln m) / E[C0]
  double expected_c0 = 0.0;     // E[C0] = E[Cm] = m cbar
};

TheoremEpsilons theorem_epsilons(const BoundParams& params);

enum class CutBoundKind { kLemma2Lower, kLemma2Upper, kLemma5Lower, kLemma5Upper };

// Tail bound for a size-k cut with mean link capacity `cbar`.
double cut_bound(CutBoundKind kind, std::size_t m, std::size_t k, double cbar, double eps,
                 double eta = 0.0, double rate = 1.0);

/// Annulus-width constant for heterogeneous power.
///
/// `displayed` is (p_max^(2a) - p_min^(2a)) [c(1+gamma beta)/beta]^(2a), the
/// displayed closed form. Inverting L(x) = c x^-a gives exponent 1/a instead,
/// which yields `inverse_consistent` = (p_max^(2/a) - p_min^(2/a))
/// [c(1+gamma beta)/beta]^(2/a). The two agree only when both vanish.
struct BConstant {
  double displayed = 0.0;
  double inverse_consistent = 0.0;

  double p_min = 0.0;
  double p_max = 0.0;
  double c = 0.0;
  double gamma = 0.0;
  double beta = 0.0;
  double alpha_pl = 0.0;

  // r_max^2 - r_min^2 for the given noise-plus-interference level
  // D = N0 + gamma * factor * E[I], by direct inversion of L (no clamp).
  double exact_delta_r_squared(double noise_plus_interference) const;
  // displayed / D^(2a) and inverse_consistent / D^(2/a).
  double displayed_delta_r_squared(double noise_plus_interference) const;
  double consistent_delta_r_squared(double noise_plus_interference) const;
};

BConstant b_constant(double p_min, double p_max, double c, double gamma, double beta,
                     double alpha_pl);

}  // namespace sinrnc::bounds
