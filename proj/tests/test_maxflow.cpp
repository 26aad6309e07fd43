#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "fixtures.hpp"
#include "sinrnc/cuts.hpp"
#include "sinrnc/errors.hpp"
#include "sinrnc/maxflow.hpp"

using namespace sinrnc;
using namespace sinrnc::maxflow;
using fixtures::line_instance;

TEST(FlowNetwork, TextbookExample) {
  FlowNetwork<std::int64_t> f(6);
  f.add_edge(0, 1, 16);
  f.add_edge(0, 2, 13);
  f.add_edge(1, 3, 12);
  f.add_edge(2, 1, 4);
  f.add_edge(2, 4, 14);
  f.add_edge(3, 2, 9);
  f.add_edge(3, 5, 20);
  f.add_edge(4, 3, 7);
  f.add_edge(4, 5, 4);
  EXPECT_EQ(f.max_flow(0, 5), 23);
  const auto side = f.source_side(0);
  EXPECT_TRUE(side[0]);
  EXPECT_FALSE(side[5]);
}

TEST(FlowNetwork, MatchesExhaustiveCut) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = 2 + it % 8;
    std::vector<std::vector<double>> cap(n, std::vector<double>(n, 0.0));
    FlowNetwork<double> f(n, 1e-12);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j && u(rng) < 0.4) {
          cap[i][j] = u(rng);
          f.add_edge(i, j, cap[i][j]);
        }
      }
    }
    double best = 1e300;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      if (!(mask & 1) || (mask >> (n - 1) & 1)) continue;
      double c = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if ((mask >> i & 1) && !(mask >> j & 1)) c += cap[i][j];
        }
      }
      best = std::min(best, c);
    }
    EXPECT_NEAR(f.max_flow(0, n - 1), best, 1e-9);
  }
}

TEST(FlowNetwork, Errors) {
  FlowNetwork<std::int64_t> f(3);
  EXPECT_THROW(f.add_edge(0, 3, 1), ConfigError);
  EXPECT_THROW(f.add_edge(0, 1, -1), ConfigError);
  EXPECT_THROW(f.max_flow(1, 1), ConfigError);
}

TEST(MinCut, Diamond) {
  const auto inst = line_instance(1, 2, 1);
  auto g = fixtures::empty_graph(inst);
  g.set_cap(0, 1, 1.0);
  g.set_cap(0, 2, 1.0);
  g.set_cap(1, 3, 1.0);
  g.set_cap(2, 3, 1.0);
  const auto r = min_cut(g, inst, 0, 3);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(r.flow_value, 2.0);
}

TEST(MinCut, DiamondWithRate) {
  std::vector<sinr::Node> nodes;
  for (int i = 0; i < 4; ++i) nodes.push_back({{0.1 + 0.2 * i, 0.5}, 0.01});
  sinr::SinrParams p;
  p.rate = 2.5;
  const sinr::NetworkInstance inst(nodes, sinr::sequential_roles(1, 2, 1), p,
                                   sinr::PowerModel::constant(0.01), sinr::CapacityModel::kR0,
                                   fixtures::default_loss());
  auto g = fixtures::empty_graph(inst);
  for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}}) g.set_cap(i, j, 2.5);
  EXPECT_EQ(min_cut(g, inst, 0, 3).value, 5.0);
  g.set_cap(1, 2, 1.0);
  EXPECT_THROW(min_cut(g, inst, 0, 3), ConfigError);
}

TEST(MinCut, SingleRelayBottleneck) {
  const auto inst = line_instance(1, 1, 1, sinr::CapacityModel::kGaussian);
  for (double a : {0.3, 1.7}) {
    for (double b : {0.0, 0.9, 2.2}) {
      auto g = fixtures::empty_graph(inst);
      g.set_cap(0, 1, a);
      if (b > 0) g.set_cap(1, 2, b);
      g.set_cap(0, 2, 5.0);  // ignored by the layered model
      EXPECT_NEAR(min_cut(g, inst, 0, 2).value, std::min(a, b), 1e-12);
    }
  }
}

TEST(MinCut, DisconnectedIsZero) {
  const auto inst = line_instance(1, 4, 1);
  const auto g = fixtures::empty_graph(inst);
  const auto r = min_cut(g, inst, 0, 5);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_TRUE(r.cut_spec.source_side.empty());
}

TEST(MinCut, BruteForceOracleRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const std::size_t m = 2 + seed % 11;
    for (auto model : {sinr::CapacityModel::kR0, sinr::CapacityModel::kGaussian}) {
      const auto inst = line_instance(1, m, 1, model);
      const auto g = fixtures::random_graph(inst, seed, 0.35);
      const NodeId t = m + 1;
      const auto r = min_cut(g, inst, 0, t);
      const auto b = cuts::brute_force_min_cut(g, inst, std::vector<NodeId>{0}, t);
      if (model == sinr::CapacityModel::kR0) {
        EXPECT_EQ(r.value, b.value) << "seed " << seed;
        EXPECT_EQ(r.flow_value, r.value);
      } else {
        EXPECT_NEAR(r.value, b.value, 1e-9) << "seed " << seed;
        EXPECT_NEAR(r.flow_value, r.value, 1e-9);
      }
    }
  }
}

TEST(MinCut, WitnessIsConsistent) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto inst = line_instance(2, 8, 1, sinr::CapacityModel::kGaussian);
    const auto g = fixtures::random_graph(inst, seed, 0.3);
    const auto& S = inst.roles().sources;
    const auto r = min_cut(g, inst, S, 10);
    EXPECT_NEAR(cuts::multi_source_cut_capacity(g, inst, r.cut_spec, S, 10), r.value, 1e-12);
    EXPECT_EQ(r.source_side.size() + r.sink_side.size(), 11u);
    for (NodeId s : S) {
      EXPECT_NE(std::find(r.source_side.begin(), r.source_side.end(), s), r.source_side.end());
    }
    EXPECT_NE(std::find(r.sink_side.begin(), r.sink_side.end(), 10), r.sink_side.end());
  }
}

TEST(MinCut, MonotoneUnderAugmentation) {
  std::mt19937_64 rng(4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = line_instance(1, 7, 1, sinr::CapacityModel::kGaussian);
    auto g = fixtures::random_graph(inst, seed, 0.3);
    const double before = min_cut(g, inst, 0, 8).value;
    std::uniform_int_distribution<NodeId> pick(0, 8);
    NodeId i = pick(rng), j = pick(rng);
    while (i == j) j = pick(rng);
    g.set_cap(i, j, g.cap(i, j) + 0.5);
    EXPECT_GE(min_cut(g, inst, 0, 8).value, before - 1e-12);
  }
}

TEST(Capacity, SingleDestinationEqualsMinCut) {
  const auto inst = line_instance(1, 6, 1, sinr::CapacityModel::kGaussian);
  const auto g = fixtures::random_graph(inst, 8, 0.5);
  const std::vector<NodeId> T = {7};
  const auto c = capacity_single_source(g, inst, 0, T);
  EXPECT_EQ(c.value, min_cut(g, inst, 0, 7).value);
  EXPECT_EQ(c.argmin_destination, 7u);
}

TEST(Capacity, UnreachableDestinationGivesZero) {
  const auto inst = line_instance(1, 3, 2);
  auto g = fixtures::full_graph(inst);
  for (NodeId u = 0; u < inst.size(); ++u) {
    if (u != 5) g.set_cap(u, 5, 0.0);
  }
  const auto c = capacity_single_source(g, inst, 0, inst.roles().destinations);
  EXPECT_EQ(c.value, 0.0);
  EXPECT_EQ(c.argmin_destination, 5u);
}

TEST(Capacity, MinimumOverDestinations) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto inst = line_instance(1, 8, 3, sinr::CapacityModel::kGaussian);
    const auto g = fixtures::random_graph(inst, seed, 0.4);
    const auto& T = inst.roles().destinations;
    double best = 1e300;
    NodeId arg = 0;
    for (NodeId t : T) {
      const double v = min_cut(g, inst, 0, t).value;
      if (v < best) {
        best = v;
        arg = t;
      }
    }
    const auto c = capacity_single_source(g, inst, 0, T);
    EXPECT_EQ(c.value, best);
    EXPECT_EQ(c.argmin_destination, arg);
  }
}

TEST(Capacity, MultiSourceWithOneSourceMatchesSingle) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto model = seed % 2 ? sinr::CapacityModel::kR0 : sinr::CapacityModel::kGaussian;
    const auto inst = line_instance(1, 6, 2, model);
    const auto g = fixtures::random_graph(inst, seed, 0.4);
    const auto& T = inst.roles().destinations;
    const auto a = capacity_single_source(g, inst, 0, T);
    const auto b = capacity_multi_source(g, inst, inst.roles().sources, T);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.argmin_destination, b.argmin_destination);
  }
}

TEST(Capacity, MultiSourceFullConnectivity) {
  const auto inst = line_instance(2, 3, 1);
  const auto g = fixtures::full_graph(inst);
  const auto c = capacity_multi_source(g, inst, inst.roles().sources, inst.roles().destinations);
  EXPECT_EQ(c.value, 3.0);
  EXPECT_EQ(c.witness.cut_spec.k(), 3u);
}

TEST(Capacity, DestinationBottleneck) {
  for (std::size_t h : {2u, 3u, 4u}) {
    for (std::size_t m : {2u, 5u, 9u}) {
      const auto inst = line_instance(h, m, 1);
      const auto g = fixtures::full_graph(inst);
      const auto c =
          capacity_multi_source(g, inst, inst.roles().sources, inst.roles().destinations);
      EXPECT_EQ(c.value, static_cast<double>(m));
      EXPECT_EQ(c.witness.cut_spec.k(), m);
    }
  }
}

TEST(Capacity, MoreSourcesNeverHurt) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto inst = line_instance(3, 7, 2, sinr::CapacityModel::kGaussian);
    const auto g = fixtures::random_graph(inst, seed, 0.35);
    const auto& T = inst.roles().destinations;
    const double multi = capacity_multi_source(g, inst, inst.roles().sources, T).value;
    for (NodeId s : inst.roles().sources) {
      EXPECT_GE(multi + 1e-12, capacity_single_source(g, inst, s, T).value);
    }
  }
}

TEST(Capacity, MultiSourceBruteForce) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto model = seed % 2 ? sinr::CapacityModel::kR0 : sinr::CapacityModel::kGaussian;
    const auto inst = line_instance(3, 2 + seed % 9, 1, model);
    const auto g = fixtures::random_graph(inst, seed, 0.35);
    const NodeId t = inst.roles().destinations[0];
    const auto& S = inst.roles().sources;
    EXPECT_NEAR(min_cut(g, inst, S, t).value, cuts::brute_force_min_cut(g, inst, S, t).value,
                1e-9);
  }
}

TEST(Capacity, RoleErrors) {
  const auto inst = line_instance(1, 3, 1);
  const auto g = fixtures::full_graph(inst);
  EXPECT_THROW(min_cut(g, inst, 1, 4), ConfigError);
  EXPECT_THROW(min_cut(g, inst, 0, 3), ConfigError);
  EXPECT_THROW(capacity_single_source(g, inst, 0, std::vector<NodeId>{}), ConfigError);
  EXPECT_THROW(capacity_multi_source(g, inst, std::vector<NodeId>{0, 0}, std::vector<NodeId>{4}),
               ConfigError);
}

TEST(Capacity, SinrGraphLargeInstance) {
  sinr::InstanceConfig cfg;
  cfg.relays = 500;
  cfg.destinations = 5;
  const auto inst = sinr::generate_instance(cfg, 1);
  const auto g = sinr::build_graph(inst, sinr::Variant::kG, std::nullopt, sinr::GraphScope::kRoles);
  const auto c = capacity_single_source(g, inst, 0, inst.roles().destinations);
  EXPECT_GE(c.value, 0.0);
  EXPECT_EQ(c.value, c.witness.flow_value);
  EXPECT_EQ(cuts::cut_capacity(g, inst, c.witness.cut_spec, 0, c.argmin_destination), c.value);
}
