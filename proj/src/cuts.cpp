#include "sinrnc/cuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "sinrnc/errors.hpp"
#include "sinrnc/parallel.hpp"

namespace sinrnc::cuts {

using sinr::Role;

namespace {

// 1 for relays on the source side, 0 for the rest of the relays.
std::vector<char> side_mask(const NetworkInstance& inst, const CutSpec& cut) {
  std::vector<char> in_vk(inst.size(), 0);
  for (NodeId u : cut.source_side) {
    if (u >= inst.size() || inst.role_of(u) != Role::kRelay) {
      throw ConfigError("cut: node " + std::to_string(u) + " is not a relay");
    }
    if (in_vk[u]) throw ConfigError("cut: duplicate relay " + std::to_string(u));
    in_vk[u] = 1;
  }
  return in_vk;
}

void require_role(const NetworkInstance& inst, NodeId id, Role role, const char* what) {
  if (id >= inst.size() || inst.role_of(id) != role) {
    throw ConfigError(std::string("cut: node ") + std::to_string(id) + " is not a " + what);
  }
}

double layered_sum(const SinrGraph& graph, const NetworkInstance& inst,
                   const std::vector<char>& in_vk, std::span<const NodeId> sources, NodeId t) {
  const auto& relays = inst.roles().relays;
  double total = 0.0;
  for (NodeId s : sources) {
    for (NodeId u : relays) {
      if (!in_vk[u]) total += graph.cap(s, u);
    }
  }
  for (NodeId j : relays) {
    if (!in_vk[j]) continue;
    for (NodeId i : relays) {
      if (!in_vk[i]) total += graph.cap(j, i);
    }
    total += graph.cap(j, t);
  }
  return total;
}

}  // namespace

double multi_source_cut_capacity(const SinrGraph& graph, const NetworkInstance& inst,
                                 const CutSpec& cut, std::span<const NodeId> sources, NodeId t) {
  if (sources.empty()) throw ConfigError("cut: need at least one source");
  for (NodeId s : sources) require_role(inst, s, Role::kSource, "source");
  require_role(inst, t, Role::kDestination, "destination");
  return layered_sum(graph, inst, side_mask(inst, cut), sources, t);
}

double cut_capacity(const SinrGraph& graph, const NetworkInstance& inst, const CutSpec& cut,
                    NodeId s, NodeId t) {
  const NodeId single[] = {s};
  return multi_source_cut_capacity(graph, inst, cut, single, t);
}

std::size_t cut_link_count(std::size_t m, std::size_t k, std::size_t h) {
  if (k > m) throw ConfigError("cut: k must lie in [0, m]");
  if (h == 0) throw ConfigError("cut: need h >= 1");
  return (m - k) * h + k * (m - k) + k;
}

double expected_cut_capacity(std::size_t m, std::size_t k, double cbar, std::size_t h) {
  if (!(cbar >= 0.0)) throw ConfigError("cut: cbar must be >= 0");
  return static_cast<double>(cut_link_count(m, k, h)) * cbar;
}

CutSpec sample_random_cut(std::span<const NodeId> relays, std::size_t k, Seed seed) {
  if (k > relays.size()) throw ConfigError("cut: k must lie in [0, m]");
  std::vector<NodeId> pool(relays.begin(), relays.end());
  Rng rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return {std::move(pool)};
}

BruteForceCut brute_force_min_cut(const SinrGraph& graph, const NetworkInstance& inst,
                                  std::span<const NodeId> sources, NodeId t) {
  const auto& relays = inst.roles().relays;
  if (relays.size() > 20) throw ConfigError("brute force: m too large (max 20)");
  if (sources.empty()) throw ConfigError("cut: need at least one source");
  for (NodeId s : sources) require_role(inst, s, Role::kSource, "source");
  require_role(inst, t, Role::kDestination, "destination");

  const std::size_t m = relays.size();
  std::vector<char> in_vk(inst.size(), 0);
  BruteForceCut best;
  best.value = std::numeric_limits<double>::infinity();
  std::size_t best_mask = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    for (std::size_t b = 0; b < m; ++b) in_vk[relays[b]] = (mask >> b) & 1U;
    const double value = layered_sum(graph, inst, in_vk, sources, t);
    if (value < best.value) {
      best.value = value;
      best_mask = mask;
    }
  }
  for (std::size_t b = 0; b < m; ++b) {
    if ((best_mask >> b) & 1U) best.cut.source_side.push_back(relays[b]);
  }
  std::sort(best.cut.source_side.begin(), best.cut.source_side.end());
  return best;
}

CbarEstimate estimate_cbar(const sinr::InstanceConfig& config, std::size_t trials, Seed seed,
                           const CbarOptions& options) {
  if (trials == 0) throw ConfigError("cbar: need trials >= 1");
  if (options.pool == PairPool::kRelays && config.relays < 2) {
    throw ConfigError("cbar: relay pair pool needs m >= 2");
  }
  std::vector<double> trial_mean(trials, 0.0);
  std::vector<double> trial_sq(trials, 0.0);
  std::vector<std::size_t> trial_pairs(trials, 0);

  parallel_for(trials, options.threads, [&](std::size_t trial) {
    const auto inst = sinr::generate_instance(config, derive_seed(seed, stream::kInstance, trial));
    std::vector<NodeId> pool;
    if (options.pool == PairPool::kRelays) {
      pool = inst.roles().relays;
    } else {
      pool.resize(inst.size());
      std::iota(pool.begin(), pool.end(), NodeId{0});
    }
    const auto sums = sinr::interference_sums(inst, pool);
    const auto& params = inst.params();
    double sum = 0.0;
    double sq = 0.0;
    std::size_t count = 0;
    auto add = [&](std::size_t a, std::size_t b) {
      const double beta = sinr::sinr(inst, pool[a], pool[b], sums.i[b]);
      const double c = sinr::link_capacity(beta, params, inst.capacity_model());
      sum += c;
      sq += c * c;
      ++count;
    };
    if (options.pairs_per_trial == 0) {
      for (std::size_t a = 0; a < pool.size(); ++a) {
        for (std::size_t b = 0; b < pool.size(); ++b) {
          if (a != b) add(a, b);
        }
      }
    } else {
      Rng rng(derive_seed(seed, stream::kPairs, trial));
      std::uniform_int_distribution<std::size_t> first(0, pool.size() - 1);
      std::uniform_int_distribution<std::size_t> second(0, pool.size() - 2);
      for (std::size_t p = 0; p < options.pairs_per_trial; ++p) {
        const std::size_t a = first(rng);
        std::size_t b = second(rng);
        if (b >= a) ++b;
        add(a, b);
      }
    }
    trial_mean[trial] = sum / static_cast<double>(count);
    trial_sq[trial] = sq / static_cast<double>(count);
    trial_pairs[trial] = count;
  });

  CbarEstimate est;
  est.trials = trials;
  for (double v : trial_mean) est.mean += v;
  est.mean /= static_cast<double>(trials);
  if (trials >= 2) {
    double ss = 0.0;
    for (double v : trial_mean) ss += (v - est.mean) * (v - est.mean);
    est.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
  } else {
    // Single trial: treat the sampled pairs as independent draws.
    const double n = static_cast<double>(trial_pairs[0]);
    const double var = std::max(0.0, trial_sq[0] - est.mean * est.mean) * n / std::max(1.0, n - 1);
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace sinrnc::cuts
