#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sinrnc/cuts.hpp"
#include "sinrnc/sinr.hpp"

namespace sinrnc::maxflow {

using sinr::NetworkInstance;
using sinr::NodeId;
using sinr::SinrGraph;

/// Dinic's blocking-flow max-flow on a directed graph with capacities of
/// type `Cap` (an integer type for exact arithmetic, or double).
template <typename Cap>
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t vertices, Cap tolerance = Cap{});

  std::size_t vertex_count() const noexcept { return head_.size(); }
  void add_edge(std::size_t from, std::size_t to, Cap capacity);

  // Runs to completion; returns the flow value. May be called once.
  Cap max_flow(std::size_t source, std::size_t sink);

  // After max_flow: vertices reachable from the source in the residual graph.
  std::vector<bool> source_side(std::size_t source) const;

  struct Edge {
    std::size_t to;
    std::size_t next;
    Cap residual;
    Cap capacity;
  };
  // Forward edges sit at even indices, their reverse at the following odd one.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_head(std::size_t v) const noexcept { return head_[v]; }

 private:
  bool build_levels(std::size_t source, std::size_t sink);
  Cap push(std::size_t v, std::size_t sink, Cap limit);

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  std::vector<std::size_t> head_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  Cap tolerance_;
};

extern template class FlowNetwork<std::int64_t>;
extern template class FlowNetwork<double>;

// Residual tolerance for real-valued (Gaussian) capacities.
inline constexpr double kFlowTolerance = 1e-9;

struct MinCutResult {
  double value = 0.0;       // capacity of the witnessing cut
  double flow_value = 0.0;  // max-flow value (equal to `value` by duality)
  std::vector<NodeId> source_side;  // graph nodes; any super-source excluded
  std::vector<NodeId> sink_side;
  cuts::CutSpec cut_spec;  // relays on the source side
};

// Exact min cut between source(s) and t on the layered network with edges
// source -> relay, relay -> relay, relay -> t (plus an unconstrained
// super-source when there are several sources). Ties resolve to the
// source-side-minimal cut.
MinCutResult min_cut(const SinrGraph& graph, const NetworkInstance& inst,
                     std::span<const NodeId> sources, NodeId t);
MinCutResult min_cut(const SinrGraph& graph, const NetworkInstance& inst, NodeId s, NodeId t);

struct CapacityResult {
  double value = 0.0;
  NodeId argmin_destination = 0;
  MinCutResult witness;
};

// min over t in T of the single-source min cut.
CapacityResult capacity_single_source(const SinrGraph& graph, const NetworkInstance& inst,
                                      NodeId s, std::span<const NodeId> destinations);
// min over t in T of the super-source min cut.
CapacityResult capacity_multi_source(const SinrGraph& graph, const NetworkInstance& inst,
                                     std::span<const NodeId> sources,
                                     std::span<const NodeId> destinations);

}  // namespace sinrnc::maxflow
