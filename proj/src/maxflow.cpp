#include "sinrnc/maxflow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <type_traits>

#include "sinrnc/errors.hpp"

namespace sinrnc::maxflow {

// ---------------------------------------------------------------------------
// FlowNetwork

template <typename Cap>
FlowNetwork<Cap>::FlowNetwork(std::size_t vertices, Cap tolerance)
    : head_(vertices, kNone), level_(vertices, -1), cursor_(vertices, kNone),
      tolerance_(tolerance) {}

template <typename Cap>
void FlowNetwork<Cap>::add_edge(std::size_t from, std::size_t to, Cap capacity) {
  if (from >= head_.size() || to >= head_.size()) throw ConfigError("flow: vertex out of range");
  if (capacity < Cap{}) throw ConfigError("flow: negative capacity");
  edges_.push_back({to, head_[from], capacity, capacity});
  head_[from] = edges_.size() - 1;
  edges_.push_back({from, head_[to], Cap{}, Cap{}});
  head_[to] = edges_.size() - 1;
}

template <typename Cap>
bool FlowNetwork<Cap>::build_levels(std::size_t source, std::size_t sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<std::size_t> queue;
  level_[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e = head_[v]; e != kNone; e = edges_[e].next) {
      const auto& edge = edges_[e];
      if (edge.residual > tolerance_ && level_[edge.to] < 0) {
        level_[edge.to] = level_[v] + 1;
        queue.push(edge.to);
      }
    }
  }
  return level_[sink] >= 0;
}

template <typename Cap>
Cap FlowNetwork<Cap>::push(std::size_t v, std::size_t sink, Cap limit) {
  if (v == sink) return limit;
  for (std::size_t& e = cursor_[v]; e != kNone; e = edges_[e].next) {
    auto& edge = edges_[e];
    if (edge.residual <= tolerance_ || level_[edge.to] != level_[v] + 1) continue;
    const Cap pushed = push(edge.to, sink, std::min(limit, edge.residual));
    if (pushed > tolerance_) {
      edge.residual -= pushed;
      edges_[e ^ 1].residual += pushed;
      return pushed;
    }
  }
  return Cap{};
}

template <typename Cap>
Cap FlowNetwork<Cap>::max_flow(std::size_t source, std::size_t sink) {
  if (source == sink) throw ConfigError("flow: source equals sink");
  Cap total{};
  const Cap unlimited = std::numeric_limits<Cap>::max();
  while (build_levels(source, sink)) {
    cursor_ = head_;
    while (true) {
      const Cap pushed = push(source, sink, unlimited);
      if (pushed <= tolerance_) break;
      total += pushed;
    }
  }
  return total;
}

template <typename Cap>
std::vector<bool> FlowNetwork<Cap>::source_side(std::size_t source) const {
  std::vector<bool> seen(head_.size(), false);
  std::queue<std::size_t> queue;
  seen[source] = true;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop();
    for (std::size_t e = head_[v]; e != kNone; e = edges_[e].next) {
      if (edges_[e].residual > tolerance_ && !seen[edges_[e].to]) {
        seen[edges_[e].to] = true;
        queue.push(edges_[e].to);
      }
    }
  }
  return seen;
}

template class FlowNetwork<std::int64_t>;
template class FlowNetwork<double>;

// ---------------------------------------------------------------------------
// Layered network built from a SINR graph

namespace {

// Vertex layout: [sources..., relays..., t, super-source?].
struct Layout {
  std::vector<NodeId> vertex_node;
  std::size_t t_vertex = 0;
  std::size_t source_vertex = 0;
  bool super_source = false;
};

Layout make_layout(const NetworkInstance& inst, std::span<const NodeId> sources, NodeId t) {
  if (sources.empty()) throw ConfigError("maxflow: need at least one source");
  for (NodeId s : sources) {
    if (s >= inst.size() || inst.role_of(s) != sinr::Role::kSource) {
      throw ConfigError("maxflow: node " + std::to_string(s) + " is not a source");
    }
  }
  if (t >= inst.size() || inst.role_of(t) != sinr::Role::kDestination) {
    throw ConfigError("maxflow: node " + std::to_string(t) + " is not a destination");
  }
  std::vector<NodeId> sorted(sources.begin(), sources.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("maxflow: duplicate source");
  }
  Layout layout;
  layout.vertex_node.assign(sources.begin(), sources.end());
  const auto& relays = inst.roles().relays;
  layout.vertex_node.insert(layout.vertex_node.end(), relays.begin(), relays.end());
  layout.t_vertex = layout.vertex_node.size();
  layout.vertex_node.push_back(t);
  layout.super_source = sources.size() > 1;
  layout.source_vertex = layout.super_source ? layout.vertex_node.size() : 0;
  return layout;
}

struct Arc {
  std::size_t from;
  std::size_t to;
  double capacity;
};

template <typename Cap>
MinCutResult solve(const SinrGraph& graph, const NetworkInstance& inst, const Layout& layout,
                   std::size_t h, double unit) {
  const auto& relays = inst.roles().relays;
  const std::size_t vertex_count = layout.vertex_node.size() + (layout.super_source ? 1 : 0);
  const Cap tolerance = std::is_floating_point_v<Cap> ? Cap(kFlowTolerance) : Cap{};
  FlowNetwork<Cap> net(vertex_count, tolerance);

  auto to_cap = [&](double c) -> Cap {
    if constexpr (std::is_integral_v<Cap>) {
      const double units = c / unit;
      const auto rounded = static_cast<Cap>(std::llround(units));
      if (static_cast<double>(rounded) * unit != c) {
        throw ConfigError("maxflow: R-0 capacity not an integer multiple of R");
      }
      return rounded;
    } else {
      return c;
    }
  };

  std::vector<Arc> arcs;
  Cap total{};
  auto add = [&](std::size_t from, std::size_t to, double c) {
    if (c <= 0.0) return;
    arcs.push_back({from, to, c});
    const Cap cap = to_cap(c);
    total += cap;
    net.add_edge(from, to, cap);
  };
  const std::size_t m = relays.size();
  for (std::size_t sv = 0; sv < h; ++sv) {
    for (std::size_t r = 0; r < m; ++r) add(sv, h + r, graph.cap(layout.vertex_node[sv], relays[r]));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (a != b) add(h + a, h + b, graph.cap(relays[a], relays[b]));
    }
    add(h + a, layout.t_vertex, graph.cap(relays[a], layout.vertex_node[layout.t_vertex]));
  }
  if (layout.super_source) {
    const Cap unconstrained = total + Cap(1);
    for (std::size_t sv = 0; sv < h; ++sv) net.add_edge(layout.source_vertex, sv, unconstrained);
  }

  const Cap flow = net.max_flow(layout.source_vertex, layout.t_vertex);
  const auto reach = net.source_side(layout.source_vertex);

  MinCutResult result;
  result.flow_value = static_cast<double>(flow) * (std::is_integral_v<Cap> ? unit : 1.0);
  double cut_value = 0.0;
  for (const Arc& arc : arcs) {
    if (reach[arc.from] && !reach[arc.to]) cut_value += arc.capacity;
  }
  result.value = cut_value;
  for (std::size_t v = 0; v < layout.vertex_node.size(); ++v) {
    const NodeId node = layout.vertex_node[v];
    (reach[v] ? result.source_side : result.sink_side).push_back(node);
    if (v >= h && v < h + m && reach[v]) result.cut_spec.source_side.push_back(node);
  }
  std::sort(result.cut_spec.source_side.begin(), result.cut_spec.source_side.end());
  return result;
}

}  // namespace

MinCutResult min_cut(const SinrGraph& graph, const NetworkInstance& inst,
                     std::span<const NodeId> sources, NodeId t) {
  const Layout layout = make_layout(inst, sources, t);
  if (graph.capacity_model() == sinr::CapacityModel::kR0) {
    return solve<std::int64_t>(graph, inst, layout, sources.size(), inst.params().rate);
  }
  return solve<double>(graph, inst, layout, sources.size(), 1.0);
}

MinCutResult min_cut(const SinrGraph& graph, const NetworkInstance& inst, NodeId s, NodeId t) {
  const NodeId single[] = {s};
  return min_cut(graph, inst, single, t);
}

namespace {

CapacityResult min_over_destinations(const SinrGraph& graph, const NetworkInstance& inst,
                                     std::span<const NodeId> sources,
                                     std::span<const NodeId> destinations) {
  if (destinations.empty()) throw ConfigError("maxflow: need at least one destination");
  CapacityResult best;
  bool first = true;
  for (NodeId t : destinations) {
    auto cut = min_cut(graph, inst, sources, t);
    if (first || cut.value < best.value) {
      best.value = cut.value;
      best.argmin_destination = t;
      best.witness = std::move(cut);
      first = false;
    }
  }
  return best;
}

}  // namespace

CapacityResult capacity_single_source(const SinrGraph& graph, const NetworkInstance& inst,
                                      NodeId s, std::span<const NodeId> destinations) {
  const NodeId single[] = {s};
  return min_over_destinations(graph, inst, single, destinations);
}

CapacityResult capacity_multi_source(const SinrGraph& graph, const NetworkInstance& inst,
                                     std::span<const NodeId> sources,
                                     std::span<const NodeId> destinations) {
  return min_over_destinations(graph, inst, sources, destinations);
}

}  // namespace sinrnc::maxflow
