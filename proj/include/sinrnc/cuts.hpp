#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sinrnc/random.hpp"
#include "sinrnc/sinr.hpp"

namespace sinrnc::cuts {

using sinr::NetworkInstance;
using sinr::NodeId;
using sinr::SinrGraph;

// Relay partition: `source_side` is V_k, every other relay is in V_k^c.
struct CutSpec {
  std::vector<NodeId> source_side;

  std::size_t k() const noexcept { return source_side.size(); }
  friend bool operator==(const CutSpec&, const CutSpec&) = default;
};

// Capacity of the layered s-t cut: s -> V_k^c, V_k -> V_k^c and V_k -> t.
// There is no direct s -> t term.
double cut_capacity(const SinrGraph& graph, const NetworkInstance& inst, const CutSpec& cut,
                    NodeId s, NodeId t);

// Multi-source form: every source feeds V_k^c.
double multi_source_cut_capacity(const SinrGraph& graph, const NetworkInstance& inst,
                                 const CutSpec& cut, std::span<const NodeId> sources, NodeId t);

// Number of links crossing a size-k cut: m + k(m-k) for one source,
// (m-k)h + k(m-k) + k otherwise (the two agree at h = 1).
std::size_t cut_link_count(std::size_t m, std::size_t k, std::size_t h = 1);

double expected_cut_capacity(std::size_t m, std::size_t k, double cbar, std::size_t h = 1);

// Uniform k-subset of `relays`, sorted; deterministic in `seed`.
CutSpec sample_random_cut(std::span<const NodeId> relays, std::size_t k, Seed seed);

struct BruteForceCut {
  double value = 0.0;
  CutSpec cut;
};

// Minimum over all 2^m relay partitions. Limited to m <= 20.
BruteForceCut brute_force_min_cut(const SinrGraph& graph, const NetworkInstance& inst,
                                  std::span<const NodeId> sources, NodeId t);

struct CbarEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

enum class PairPool { kRelays, kAllNodes };

struct CbarOptions {
  PairPool pool = PairPool::kRelays;
  // 0 uses every ordered pair in the pool; otherwise that many uniformly
  // sampled ordered pairs per trial.
  std::size_t pairs_per_trial = 0;
  std::size_t threads = 1;
};

// Monte Carlo estimate of the mean link capacity over fresh instances.
CbarEstimate estimate_cbar(const sinr::InstanceConfig& config, std::size_t trials, Seed seed,
                           const CbarOptions& options = {});

}  // namespace sinrnc::cuts
