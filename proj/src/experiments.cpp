#include "sinrnc/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sinrnc/errors.hpp"
#include "sinrnc/parallel.hpp"

namespace sinrnc::experiments {

using sinr::NodeId;

std::string to_string(Study s) {
  switch (s) {
    case Study::kInterference:
      return "interference";
    case Study::kRandomCut:
      return "random-cut";
    case Study::kMinCut:
      return "mincut";
  }
  return "?";
}

std::string study_stem(Study s) {
  switch (s) {
    case Study::kInterference:
      return "interference";
    case Study::kRandomCut:
      return "random_cut";
    case Study::kMinCut:
      return "mincut";
  }
  return "study";
}

sinr::NetworkInstance trial_instance(const ExperimentConfig& cfg, std::size_t trial) {
  return sinr::generate_instance(cfg.instance, derive_seed(cfg.seed, stream::kInstance, trial));
}

cuts::CutSpec trial_cut(const ExperimentConfig& cfg, const sinr::NetworkInstance& inst,
                        std::size_t trial) {
  return cuts::sample_random_cut(inst.roles().relays, cfg.cut_k,
                                 derive_seed(cfg.seed, stream::kCut, trial));
}

cuts::CbarEstimate campaign_cbar(const ExperimentConfig& cfg) {
  cuts::CbarOptions options;
  options.pool = cfg.cbar_pool;
  options.threads = cfg.threads;
  return cuts::estimate_cbar(cfg.instance, cfg.cbar_trials, derive_seed(cfg.seed, stream::kCbar),
                             options);
}

namespace {

bool constant_power(const ExperimentConfig& cfg) {
  return cfg.instance.power.kind() == sinr::PowerModel::Kind::kConstant;
}

void summarize(ConcentrationReport& r, const std::vector<double>& values) {
  r.samples = values.size();
  if (values.empty()) return;
  const double n = static_cast<double>(values.size());
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.std_dev = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  r.std_error = r.std_dev / std::sqrt(n);
}

void apply_band(ConcentrationReport& r, const std::vector<double>& values) {
  r.band_lo = (1.0 - r.eps_lower) * r.reference;
  r.band_hi = (1.0 + r.eps_upper) * r.reference;
  r.lower_vacuous = !(r.eps_lower < 1.0);
  r.counts = {};
  for (double v : values) {
    if (v < r.band_lo) {
      ++r.counts.below;
    } else if (v > r.band_hi) {
      ++r.counts.above;
    } else {
      ++r.counts.inside;
    }
  }
}

void require_roles(const ExperimentConfig& cfg) {
  const auto& inst = cfg.instance;
  if (inst.sources == 0 || inst.relays == 0 || inst.destinations == 0) {
    throw ConfigError("config: study needs sources, relays and destinations >= 1");
  }
}

double safe_ratio(double num, double den) {
  return den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
}

}  // namespace

// ---------------------------------------------------------------------------

ConcentrationReport run_interference_study(const ExperimentConfig& cfg) {
  cfg.validate();
  ConcentrationReport r;
  r.study = Study::kInterference;
  r.config = resolved_config(cfg);

  std::vector<std::vector<InterferenceRecord>> per_trial(cfg.trials);
  std::vector<double> power_sum(cfg.trials, 0.0);
  std::vector<std::size_t> node_count(cfg.trials, 0);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto inst = trial_instance(cfg, t);
    const auto sums = sinr::interference_sums(inst);
    auto& rec = per_trial[t];
    rec.resize(inst.size());
    for (std::size_t j = 0; j < inst.size(); ++j) {
      rec[j] = {t, j, sums.j[j], sums.i[j]};
      power_sum[t] += inst.node(j).power;
    }
    node_count[t] = inst.size();
  });

  double gain_total = 0.0;
  double ordered_pairs = 0.0;
  double power_total = 0.0;
  double nodes_total = 0.0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    for (const auto& rec : per_trial[t]) gain_total += rec.j;
    const double n = static_cast<double>(node_count[t]);
    ordered_pairs += n * (n - 1.0);
    power_total += power_sum[t];
    nodes_total += n;
    r.interference.insert(r.interference.end(), per_trial[t].begin(), per_trial[t].end());
  }
  r.mean_gain = gain_total / ordered_pairs;
  const bool constant = constant_power(cfg);
  r.mean_power = constant ? cfg.instance.power.p_min() : power_total / nodes_total;
  std::vector<double> values;
  values.reserve(r.interference.size());
  for (const auto& rec : r.interference) values.push_back(constant ? rec.j : rec.i);
  summarize(r, values);

  const std::size_t n = cfg.instance.placement.n;
  const auto eps = constant ? bounds::lemma1_epsilons(n, r.mean_gain)
                            : bounds::lemma3_epsilons(n, r.mean_power, r.mean_gain);
  r.reference = r.mean;
  r.eps_lower = eps.lower;
  r.eps_upper = eps.upper;
  apply_band(r, values);
  r.bound_lower = r.lower_vacuous ? 1.0 : bounds::chernoff_tail(eps.mean, eps.lower, bounds::Tail::kLower);
  r.bound_upper = bounds::chernoff_tail(eps.mean, eps.upper, bounds::Tail::kUpper);
  r.upper_vacuous = r.bound_upper >= 1.0;
  return r;
}

// ---------------------------------------------------------------------------

ConcentrationReport run_random_cut_study(const ExperimentConfig& cfg) {
  cfg.validate();
  require_roles(cfg);
  const auto& ic = cfg.instance;
  if (cfg.cut_k > ic.relays) {
    throw ConfigError("config: cut size k = " + std::to_string(cfg.cut_k) + " exceeds m = " +
                      std::to_string(ic.relays));
  }
  ConcentrationReport r;
  r.study = Study::kRandomCut;
  r.config = resolved_config(cfg);
  const auto cbar = campaign_cbar(cfg);
  r.cbar = cbar.mean;
  r.cbar_std_error = cbar.std_error;
  r.cbar_trials = cbar.trials;

  std::vector<double> values(cfg.trials, 0.0);
  std::vector<double> power_mean(cfg.trials, 0.0);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto inst = trial_instance(cfg, t);
    const auto graph = sinr::build_graph(inst, sinr::Variant::kG, std::nullopt,
                                         sinr::GraphScope::kRoles);
    const auto cut = trial_cut(cfg, inst, t);
    values[t] = cuts::multi_source_cut_capacity(graph, inst, cut, inst.roles().sources,
                                                inst.roles().destinations.front());
    double p = 0.0;
    for (const auto& node : inst.nodes()) p += node.power;
    power_mean[t] = p / static_cast<double>(inst.size());
  });
  for (std::size_t t = 0; t < cfg.trials; ++t) r.cuts.push_back({t, cfg.cut_k, values[t]});
  r.mean_power = std::accumulate(power_mean.begin(), power_mean.end(), 0.0) /
                 static_cast<double>(cfg.trials);
  summarize(r, values);

  const std::size_t m = ic.relays;
  const std::size_t h = ic.sources;
  const double links = static_cast<double>(cuts::cut_link_count(m, cfg.cut_k, h));
  const double log_m = std::log(static_cast<double>(m));
  r.reference = cuts::expected_cut_capacity(m, cfg.cut_k, r.cbar, h);
  // Band widths chosen so each tail bound equals m^-alpha.
  if (constant_power(cfg)) {
    r.eps_lower = std::sqrt(safe_ratio(2.0 * cfg.alpha_exp * log_m, r.reference));
    r.eps_upper = std::sqrt(safe_ratio(3.0 * cfg.alpha_exp * log_m, r.reference));
  } else {
    const double spread = (cfg.eta + 1.0) * ic.params.rate;
    r.eps_lower = r.eps_upper =
        spread * std::sqrt(2.0 * cfg.alpha_exp * links * log_m) / r.reference;
    if (!(r.reference > 0.0)) r.eps_lower = r.eps_upper = std::numeric_limits<double>::infinity();
  }
  apply_band(r, values);

  auto tail = [&](double eps, double divisor) {
    if (!(r.cbar > 0.0) || !std::isfinite(eps)) return 1.0;
    double exponent = links * r.cbar * eps * eps / divisor;
    if (!constant_power(cfg)) {
      const double spread = (cfg.eta + 1.0) * ic.params.rate;
      exponent = links * r.cbar * r.cbar * eps * eps / (2.0 * spread * spread);
    }
    return std::min(1.0, std::exp(-exponent));
  };
  r.bound_lower = r.lower_vacuous ? 1.0 : tail(r.eps_lower, 2.0);
  r.bound_upper = tail(r.eps_upper, 3.0);
  r.upper_vacuous = r.bound_upper >= 1.0;
  return r;
}

// ---------------------------------------------------------------------------

ConcentrationReport run_mincut_study(const ExperimentConfig& cfg) {
  cfg.validate();
  require_roles(cfg);
  const auto& ic = cfg.instance;
  if (ic.relays < 2) throw ConfigError("config: min-cut study needs m >= 2");
  ConcentrationReport r;
  r.study = Study::kMinCut;
  r.config = resolved_config(cfg);
  const auto cbar = campaign_cbar(cfg);
  r.cbar = cbar.mean;
  r.cbar_std_error = cbar.std_error;
  r.cbar_trials = cbar.trials;

  std::vector<maxflow::CapacityResult> results(cfg.trials);
  std::vector<double> power_mean(cfg.trials, 0.0);
  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    const auto inst = trial_instance(cfg, t);
    const auto graph = sinr::build_graph(inst, sinr::Variant::kG, std::nullopt,
                                         sinr::GraphScope::kRoles);
    const auto& roles = inst.roles();
    results[t] = roles.sources.size() == 1
                     ? maxflow::capacity_single_source(graph, inst, roles.sources.front(),
                                                       roles.destinations)
                     : maxflow::capacity_multi_source(graph, inst, roles.sources,
                                                      roles.destinations);
    double p = 0.0;
    for (const auto& node : inst.nodes()) p += node.power;
    power_mean[t] = p / static_cast<double>(inst.size());
  });
  r.mean_power = std::accumulate(power_mean.begin(), power_mean.end(), 0.0) /
                 static_cast<double>(cfg.trials);

  const bool constant = constant_power(cfg);
  r.reference = static_cast<double>(ic.relays) * r.cbar;
  double eps = std::numeric_limits<double>::infinity();
  if (r.cbar > 0.0) {
    bounds::BoundParams bp;
    bp.n = ic.placement.n;
    bp.m = ic.relays;
    bp.l = ic.destinations;
    bp.h = ic.sources;
    bp.mean_power = r.mean_power;
    bp.cbar = r.cbar;
    bp.eta = cfg.eta;
    bp.rate = ic.params.rate;
    bp.alpha_exp = cfg.alpha_exp;
    const auto te = bounds::theorem_epsilons(bp);
    eps = constant ? std::max(te.constant_lower, te.constant_upper) : te.heterogeneous;
  }
  r.eps_lower = eps;
  r.eps_upper = eps;

  std::vector<double> values(cfg.trials);
  for (std::size_t t = 0; t < cfg.trials; ++t) values[t] = results[t].value;
  summarize(r, values);
  apply_band(r, values);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    r.mincuts.push_back({t, results[t].value, results[t].argmin_destination, r.band_lo, r.band_hi});
  }

  auto tail = [&](double divisor) {
    if (!(r.cbar > 0.0) || !std::isfinite(eps)) return 1.0;
    const double m = static_cast<double>(ic.relays);
    if (constant) return std::min(1.0, std::exp(-eps * eps * m * r.cbar / divisor));
    const double spread = (cfg.eta + 1.0) * ic.params.rate;
    return std::min(1.0, std::exp(-eps * eps * m * r.cbar * r.cbar / (2.0 * spread * spread)));
  };
  // Union bound over the l destinations on the lower side.
  r.bound_lower =
      r.lower_vacuous ? 1.0 : std::min(1.0, static_cast<double>(ic.destinations) * tail(2.0));
  r.bound_upper = tail(3.0);
  r.upper_vacuous = r.bound_upper >= 1.0;
  return r;
}

// ---------------------------------------------------------------------------

OracleReport run_oracle_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  require_roles(cfg);
  const auto& ic = cfg.instance;
  if (ic.relays > kOracleMaxRelays) {
    throw ConfigError("config: oracle suite needs m <= " + std::to_string(kOracleMaxRelays));
  }
  OracleReport report;
  report.config = resolved_config(cfg);
  report.instances = cfg.trials;

  struct TrialOutcome {
    std::vector<OracleComparison> comparisons;
    std::vector<OracleMismatch> mismatches;
    double max_gaussian_diff = 0.0;
  };
  std::vector<TrialOutcome> outcomes(cfg.trials);

  parallel_for(cfg.trials, cfg.threads, [&](std::size_t t) {
    auto trial_cfg = ic;
    trial_cfg.relays = ic.relays == 1 ? 1 : 2 + t % (ic.relays - 1);
    const auto base =
        sinr::generate_instance(trial_cfg, derive_seed(cfg.seed, stream::kInstance, t));
    auto& out = outcomes[t];
    for (auto model : {sinr::CapacityModel::kR0, sinr::CapacityModel::kGaussian}) {
      const auto inst = base.with_capacity_model(model);
      const auto graph =
          sinr::build_graph(inst, sinr::Variant::kG, std::nullopt, sinr::GraphScope::kRoles);
      const auto& roles = inst.roles();
      for (NodeId dest : roles.destinations) {
        const auto flow = maxflow::min_cut(graph, inst, roles.sources, dest);
        const auto brute = cuts::brute_force_min_cut(graph, inst, roles.sources, dest);
        OracleComparison cmp{t, trial_cfg.relays, sinr::to_string(model), dest, flow.value,
                             brute.value};
        out.comparisons.push_back(cmp);
        bool ok = false;
        if (model == sinr::CapacityModel::kR0) {
          ok = flow.value == brute.value && flow.flow_value == flow.value;
        } else {
          const double diff = std::max(std::abs(flow.value - brute.value),
                                       std::abs(flow.flow_value - brute.value));
          out.max_gaussian_diff = std::max(out.max_gaussian_diff, diff);
          ok = diff <= kGaussianOracleTolerance;
        }
        if (!ok) {
          out.mismatches.push_back({t, cmp.model, dest, flow.value, brute.value,
                                    io::instance_to_string(inst)});
        }
      }
    }
  });

  for (auto& o : outcomes) {
    report.comparisons.insert(report.comparisons.end(), o.comparisons.begin(),
                              o.comparisons.end());
    report.mismatches.insert(report.mismatches.end(), o.mismatches.begin(), o.mismatches.end());
    report.max_abs_diff_gaussian = std::max(report.max_abs_diff_gaussian, o.max_gaussian_diff);
  }
  return report;
}

// ---------------------------------------------------------------------------

MeanInterference estimate_mean_interference(const sinr::InstanceConfig& config,
                                            std::size_t trials, Seed seed) {
  if (trials == 0) throw ConfigError("mean interference: need trials >= 1");
  double gain = 0.0;
  double pairs = 0.0;
  double power = 0.0;
  double nodes = 0.0;
  double interference = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto inst =
        sinr::generate_instance(config, derive_seed(seed, stream::kMeanInterference, t));
    const auto sums = sinr::interference_sums(inst);
    const double n = static_cast<double>(inst.size());
    for (std::size_t j = 0; j < inst.size(); ++j) {
      gain += sums.j[j];
      interference += sums.i[j];
      power += inst.node(j).power;
    }
    pairs += n * (n - 1.0);
    nodes += n;
  }
  MeanInterference out;
  out.mean_gain = gain / pairs;
  out.mean_power = power / nodes;
  out.mean_j = gain / nodes;
  out.mean_i = interference / nodes;
  return out;
}

}  // namespace sinrnc::experiments
