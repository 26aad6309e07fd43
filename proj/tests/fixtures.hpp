#pragma once

#include <random>
#include <vector>

#include "sinrnc/sinr.hpp"

namespace fixtures {

using namespace sinrnc;
using sinr::NodeId;

inline sinr::SinrParams params(double gamma = 0.02) {
  sinr::SinrParams p;
  p.gamma = gamma;
  return p;
}

inline geometry::PathLossModel default_loss(double d0 = 0.01) {
  return geometry::PathLossModel(1e-3 / 64.0, 3.0, d0);
}

// Nodes 0..h-1 sources, then m relays, then l destinations, then filler.
inline sinr::NetworkInstance line_instance(std::size_t h, std::size_t m, std::size_t l,
                                           sinr::CapacityModel model = sinr::CapacityModel::kR0,
                                           std::size_t extra = 0) {
  std::vector<sinr::Node> nodes;
  const std::size_t n = h + m + l + extra;
  for (std::size_t i = 0; i < n; ++i) {
    nodes.push_back({{(static_cast<double>(i) + 0.5) / static_cast<double>(n), 0.5}, 0.01});
  }
  return sinr::NetworkInstance(std::move(nodes), sinr::sequential_roles(h, m, l), params(),
                               sinr::PowerModel::constant(0.01), model, default_loss());
}

inline sinr::SinrGraph empty_graph(const sinr::NetworkInstance& inst) {
  std::vector<NodeId> all(inst.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return sinr::SinrGraph(inst.size(), all, sinr::Variant::kG, inst.capacity_model(),
                         std::nullopt);
}

inline sinr::SinrGraph full_graph(const sinr::NetworkInstance& inst, double cap = 1.0) {
  auto g = empty_graph(inst);
  for (NodeId i = 0; i < inst.size(); ++i) {
    for (NodeId j = 0; j < inst.size(); ++j) {
      if (i != j) g.set_cap(i, j, cap);
    }
  }
  return g;
}

// Independent random capacities; R0 draws {0, 1}, Gaussian draws reals.
inline sinr::SinrGraph random_graph(const sinr::NetworkInstance& inst, std::uint64_t seed,
                                    double density) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto g = empty_graph(inst);
  for (NodeId i = 0; i < inst.size(); ++i) {
    for (NodeId j = 0; j < inst.size(); ++j) {
      if (i == j || u(rng) >= density) continue;
      g.set_cap(i, j, inst.capacity_model() == sinr::CapacityModel::kR0 ? 1.0 : 0.1 + u(rng));
    }
  }
  return g;
}

}  // namespace fixtures
