#include "sinrnc/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "sinrnc/cuts.hpp"
#include "sinrnc/errors.hpp"

namespace sinrnc::bounds {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string("bounds: ") + what + " must be positive and finite");
  }
}

Epsilons concentration_epsilons(std::size_t n, double mean_sum) {
  const double log_n = std::log(static_cast<double>(n));
  Epsilons eps;
  eps.mean = mean_sum;
  eps.lower = std::sqrt(4.0 * log_n / mean_sum);
  eps.upper = std::sqrt(6.0 * log_n / mean_sum);
  eps.lower_vacuous = eps.lower >= 1.0;
  return eps;
}

}  // namespace

Epsilons lemma1_epsilons(std::size_t n, double mean_gain) {
  if (n < 2) throw DomainError("bounds: need n >= 2");
  require_positive(mean_gain, "E[L]");
  return concentration_epsilons(n, static_cast<double>(n - 1) * mean_gain);
}

Epsilons lemma3_epsilons(std::size_t n, double mean_power, double mean_gain) {
  if (n < 2) throw DomainError("bounds: need n >= 2");
  require_positive(mean_power, "E[P]");
  require_positive(mean_gain, "E[L]");
  return concentration_epsilons(n, static_cast<double>(n - 1) * mean_power * mean_gain);
}

double chernoff_tail(double mean, double eps, Tail side) {
  require_positive(mean, "mean");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("bounds: eps must be >= 0");
  if (side == Tail::kLower && eps >= 1.0) {
    throw DomainError("bounds: lower Chernoff tail needs eps < 1");
  }
  const double divisor = side == Tail::kLower ? 2.0 : 3.0;
  return std::min(1.0, std::exp(-mean * eps * eps / divisor));
}

double azuma_bound(double lambda, std::span<const double> increments) {
  if (increments.empty()) throw DomainError("bounds: Azuma needs at least one increment");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("bounds: lambda must be >= 0");
  double sum_sq = 0.0;
  for (double c : increments) {
    require_positive(c, "Azuma increment");
    sum_sq += c * c;
  }
  return std::min(1.0, std::exp(-lambda * lambda / (2.0 * sum_sq)));
}

TheoremEpsilons theorem_epsilons(const BoundParams& p) {
  if (p.m < 2) throw DomainError("bounds: need m >= 2");
  require_positive(p.cbar, "cbar");
  require_positive(p.alpha_exp, "alpha");
  require_positive(p.rate, "R");
  if (!(p.eta >= 0.0)) throw DomainError("bounds: eta must be >= 0");
  const double m = static_cast<double>(p.m);
  const double log_m = std::log(m);
  TheoremEpsilons out;
  out.expected_c0 = m * p.cbar;
  out.constant_lower = std::sqrt(2.0 * p.alpha_exp * log_m / out.expected_c0);
  out.constant_upper = std::sqrt(3.0 * p.alpha_exp * log_m / out.expected_c0);
  out.heterogeneous =
      (p.eta + 1.0) * p.rate / out.expected_c0 * std::sqrt(2.0 * p.alpha_exp * m * log_m);
  return out;
}

double cut_bound(CutBoundKind kind, std::size_t m, std::size_t k, double cbar, double eps,
                 double eta, double rate) {
  if (k > m) throw DomainError("bounds: k must lie in [0, m]");
  require_positive(cbar, "cbar");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("bounds: eps must be >= 0");
  const bool lower = kind == CutBoundKind::kLemma2Lower || kind == CutBoundKind::kLemma5Lower;
  if (lower && eps >= 1.0) throw DomainError("bounds: lower cut bound needs eps < 1");
  const double links = static_cast<double>(cuts::cut_link_count(m, k));
  double exponent = 0.0;
  switch (kind) {
    case CutBoundKind::kLemma2Lower:
      exponent = links * cbar * eps * eps / 2.0;
      break;
    case CutBoundKind::kLemma2Upper:
      exponent = links * cbar * eps * eps / 3.0;
      break;
    case CutBoundKind::kLemma5Lower:
    case CutBoundKind::kLemma5Upper: {
      require_positive(rate, "R");
      if (!(eta >= 0.0)) throw DomainError("bounds: eta must be >= 0");
      const double spread = (eta + 1.0) * rate;
      exponent = links * cbar * cbar * eps * eps / (2.0 * spread * spread);
      break;
    }
  }
  return std::min(1.0, std::exp(-exponent));
}

BConstant b_constant(double p_min, double p_max, double c, double gamma, double beta,
                     double alpha_pl) {
  require_positive(p_min, "p_min");
  require_positive(p_max, "p_max");
  require_positive(c, "c");
  require_positive(beta, "beta");
  require_positive(alpha_pl, "path-loss exponent");
  if (!(gamma >= 0.0)) throw DomainError("bounds: gamma must be >= 0");
  if (p_max < p_min) throw DomainError("bounds: need p_min <= p_max");
  BConstant b;
  b.p_min = p_min;
  b.p_max = p_max;
  b.c = c;
  b.gamma = gamma;
  b.beta = beta;
  b.alpha_pl = alpha_pl;
  const double base = c * (1.0 + gamma * beta) / beta;
  const double displayed_exp = 2.0 * alpha_pl;
  const double inv_exp = 2.0 / alpha_pl;
  // p_min == p_max gives exactly 0 here.
  b.displayed = (std::pow(p_max, displayed_exp) - std::pow(p_min, displayed_exp)) * std::pow(base, displayed_exp);
  b.inverse_consistent =
      (std::pow(p_max, inv_exp) - std::pow(p_min, inv_exp)) * std::pow(base, inv_exp);
  return b;
}

double BConstant::exact_delta_r_squared(double noise_plus_interference) const {
  require_positive(noise_plus_interference, "noise plus interference");
  // L(r) = beta/(1+gamma beta) * D / p  =>  r = (c / L(r))^(1/a).
  auto radius = [&](double p) {
    const double target = beta / (1.0 + gamma * beta) * noise_plus_interference / p;
    return std::pow(c / target, 1.0 / alpha_pl);
  };
  const double r_min = radius(p_min);
  const double r_max = radius(p_max);
  return r_max * r_max - r_min * r_min;
}

double BConstant::displayed_delta_r_squared(double noise_plus_interference) const {
  require_positive(noise_plus_interference, "noise plus interference");
  return displayed / std::pow(noise_plus_interference, 2.0 * alpha_pl);
}

double BConstant::consistent_delta_r_squared(double noise_plus_interference) const {
  require_positive(noise_plus_interference, "noise plus interference");
  return inverse_consistent / std::pow(noise_plus_interference, 2.0 / alpha_pl);
}

}  // namespace sinrnc::bounds
