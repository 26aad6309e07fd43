#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "fixtures.hpp"
#include "sinrnc/cuts.hpp"
#include "sinrnc/errors.hpp"

using namespace sinrnc;
using namespace sinrnc::cuts;
using fixtures::full_graph;
using fixtures::line_instance;

namespace {

struct Edge {
  NodeId from, to;
  double cap;
};

// Enumerate every directed edge of the graph and keep the ones that cross the
// cut in one of the three layered classes.
double edge_list_cut(const SinrGraph& g, const NetworkInstance& inst, const CutSpec& cut,
                     const std::vector<NodeId>& sources, NodeId t) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < inst.size(); ++i) {
    for (NodeId j = 0; j < inst.size(); ++j) {
      if (i != j && g.covers(i) && g.covers(j) && g.cap(i, j) > 0.0) {
        edges.push_back({i, j, g.cap(i, j)});
      }
    }
  }
  const std::set<NodeId> vk(cut.source_side.begin(), cut.source_side.end());
  const std::set<NodeId> src(sources.begin(), sources.end());
  const auto& relays = inst.roles().relays;
  const std::set<NodeId> relay_set(relays.begin(), relays.end());
  double total = 0.0;
  for (const auto& e : edges) {
    const bool from_src = src.count(e.from) > 0;
    const bool from_vk = vk.count(e.from) > 0;
    const bool to_vkc = relay_set.count(e.to) > 0 && vk.count(e.to) == 0;
    if ((from_src && to_vkc) || (from_vk && to_vkc) || (from_vk && e.to == t)) total += e.cap;
  }
  return total;
}

CutSpec first_k(const NetworkInstance& inst, std::size_t k) {
  const auto& r = inst.roles().relays;
  return {std::vector<NodeId>(r.begin(), r.begin() + k)};
}

}  // namespace

TEST(CutCapacity, FullConnectivityTwoRelays) {
  const auto inst = line_instance(1, 2, 1);
  const auto g = full_graph(inst);
  EXPECT_EQ(cut_capacity(g, inst, {{1}}, 0, 3), 3.0);
}

TEST(CutCapacity, EmptySideIsSourceStar) {
  const auto inst = line_instance(1, 4, 1);
  const auto g = fixtures::random_graph(inst, 3, 0.6);
  double star = 0.0;
  for (NodeId u : inst.roles().relays) star += g.cap(0, u);
  EXPECT_EQ(cut_capacity(g, inst, {}, 0, 5), star);
}

TEST(CutCapacity, NoDirectSourceDestinationTerm) {
  const auto inst = line_instance(1, 2, 1);
  auto g = fixtures::empty_graph(inst);
  g.set_cap(0, 3, 1.0);
  g.set_cap(3, 1, 1.0);  // destination -> relay
  g.set_cap(1, 0, 1.0);  // relay -> source
  for (std::size_t k = 0; k <= 2; ++k) EXPECT_EQ(cut_capacity(g, inst, first_k(inst, k), 0, 3), 0.0);
}

TEST(CutCapacity, EdgeListOracle) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto model = seed % 2 ? sinr::CapacityModel::kGaussian : sinr::CapacityModel::kR0;
    const auto inst = line_instance(1, 5, 2, model, 3);
    const auto g = fixtures::random_graph(inst, seed, 0.5);
    for (std::size_t mask = 0; mask < 32; ++mask) {
      CutSpec cut;
      for (std::size_t b = 0; b < 5; ++b) {
        if (mask >> b & 1) cut.source_side.push_back(1 + b);
      }
      for (NodeId t : {6, 7}) {
        EXPECT_NEAR(cut_capacity(g, inst, cut, 0, t), edge_list_cut(g, inst, cut, {0}, t), 1e-12);
      }
    }
  }
}

TEST(CutCapacity, SinrInstanceEdgeListOracle) {
  sinr::InstanceConfig cfg;
  cfg.placement.n = 300;
  cfg.relays = 5;
  cfg.path_loss = geometry::PathLossModel(0.05, 3.0, 0.01);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto inst = sinr::generate_instance(cfg, seed);
    const auto g = sinr::build_graph(inst, sinr::Variant::kG, std::nullopt,
                                     sinr::GraphScope::kRoles);
    for (std::size_t k = 0; k <= 5; ++k) {
      const auto cut = sample_random_cut(inst.roles().relays, k, seed * 10 + k);
      EXPECT_EQ(cut_capacity(g, inst, cut, 0, 6), edge_list_cut(g, inst, cut, {0}, 6));
    }
  }
}

TEST(CutCapacity, RoleMismatch) {
  const auto inst = line_instance(1, 3, 1);
  const auto g = full_graph(inst);
  EXPECT_THROW(cut_capacity(g, inst, {}, 1, 4), ConfigError);
  EXPECT_THROW(cut_capacity(g, inst, {}, 0, 2), ConfigError);
  EXPECT_THROW(cut_capacity(g, inst, {{0}}, 0, 4), ConfigError);
  EXPECT_THROW(cut_capacity(g, inst, {{4}}, 0, 4), ConfigError);
  EXPECT_THROW(cut_capacity(g, inst, {{1, 1}}, 0, 4), ConfigError);
}

TEST(MultiSourceCut, SingleSourceReduction) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto inst = line_instance(1, 6, 1, sinr::CapacityModel::kGaussian);
    const auto g = fixtures::random_graph(inst, seed, 0.4);
    const auto cut = sample_random_cut(inst.roles().relays, seed % 7, seed);
    const std::vector<NodeId> s = {0};
    EXPECT_EQ(multi_source_cut_capacity(g, inst, cut, s, 7), cut_capacity(g, inst, cut, 0, 7));
  }
}

TEST(MultiSourceCut, AllRelaysOnSourceSide) {
  const auto inst = line_instance(2, 4, 1);
  const auto g = fixtures::random_graph(inst, 4, 0.5);
  double into_t = 0.0;
  for (NodeId u : inst.roles().relays) into_t += g.cap(u, 6);
  EXPECT_EQ(multi_source_cut_capacity(g, inst, first_k(inst, 4), inst.roles().sources, 6), into_t);
}

TEST(MultiSourceCut, TermCount) {
  const auto inst = line_instance(2, 3, 1);
  const auto g = full_graph(inst);
  EXPECT_EQ(multi_source_cut_capacity(g, inst, first_k(inst, 1), inst.roles().sources, 5), 7.0);
}

TEST(MultiSourceCut, EdgeListOracle) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto inst = line_instance(3, 5, 1, sinr::CapacityModel::kGaussian);
    const auto g = fixtures::random_graph(inst, seed, 0.5);
    const auto& S = inst.roles().sources;
    for (std::size_t k = 0; k <= 5; ++k) {
      const auto cut = sample_random_cut(inst.roles().relays, k, seed + 100 * k);
      EXPECT_NEAR(multi_source_cut_capacity(g, inst, cut, S, 8),
                  edge_list_cut(g, inst, cut, S, 8), 1e-12);
    }
  }
}

TEST(CutIdentities, FullConnectivityTermCounts) {
  for (std::size_t h : {1u, 2u, 3u}) {
    for (std::size_t m : {1u, 4u, 7u}) {
      const auto inst = line_instance(h, m, 1);
      const auto g = full_graph(inst, 2.5);
      const NodeId t = h + m;
      for (std::size_t k = 0; k <= m; ++k) {
        const double v =
            multi_source_cut_capacity(g, inst, first_k(inst, k), inst.roles().sources, t);
        EXPECT_EQ(v, 2.5 * static_cast<double>((m - k) * h + k * (m - k) + k));
        EXPECT_EQ(v, 2.5 * static_cast<double>(cut_link_count(m, k, h)));
      }
      const double c0 = multi_source_cut_capacity(g, inst, {}, inst.roles().sources, t);
      const double cm = multi_source_cut_capacity(g, inst, first_k(inst, m), inst.roles().sources, t);
      EXPECT_EQ(c0 - cm, 2.5 * static_cast<double>((h - 1) * m));
    }
  }
}

TEST(ExpectedCut, Values) {
  EXPECT_EQ(expected_cut_capacity(100, 0, 1.0), 100.0);
  EXPECT_EQ(expected_cut_capacity(100, 50, 1.0), 2600.0);
  EXPECT_EQ(expected_cut_capacity(100, 100, 1.0, 3), 100.0);
  EXPECT_EQ(expected_cut_capacity(100, 0, 1.0, 3), 300.0);
  EXPECT_EQ(cut_link_count(500, 0), 500u);
  EXPECT_THROW(expected_cut_capacity(10, 11, 1.0), ConfigError);
  EXPECT_THROW(expected_cut_capacity(10, 1, -1.0), ConfigError);
  EXPECT_THROW(cut_link_count(10, 1, 0), ConfigError);
}

TEST(ExpectedCut, SymmetricForOneSource) {
  for (std::size_t k = 0; k <= 40; ++k) {
    EXPECT_EQ(expected_cut_capacity(40, k, 0.3), expected_cut_capacity(40, 40 - k, 0.3));
  }
}

TEST(RandomCut, Extremes) {
  const std::vector<NodeId> relays = {3, 4, 5, 6, 7};
  EXPECT_TRUE(sample_random_cut(relays, 0, 1).source_side.empty());
  EXPECT_EQ(sample_random_cut(relays, 5, 1).source_side, relays);
  EXPECT_THROW(sample_random_cut(relays, 6, 1), ConfigError);
}

TEST(RandomCut, Deterministic) {
  std::vector<NodeId> relays(30);
  for (std::size_t i = 0; i < 30; ++i) relays[i] = i + 1;
  const auto a = sample_random_cut(relays, 12, 99);
  EXPECT_EQ(a, sample_random_cut(relays, 12, 99));
  EXPECT_EQ(a.k(), 12u);
  EXPECT_TRUE(std::is_sorted(a.source_side.begin(), a.source_side.end()));
  EXPECT_EQ(std::set<NodeId>(a.source_side.begin(), a.source_side.end()).size(), 12u);
}

TEST(RandomCut, InclusionFrequency) {
  std::vector<NodeId> relays(50);
  for (std::size_t i = 0; i < 50; ++i) relays[i] = i;
  std::vector<int> hits(50, 0);
  const int draws = 10000;
  for (int d = 0; d < draws; ++d) {
    for (NodeId u : sample_random_cut(relays, 25, 7000 + d).source_side) ++hits[u];
  }
  const double sigma = std::sqrt(draws * 0.25);
  for (int h : hits) EXPECT_NEAR(h, draws * 0.5, 3.5 * sigma);
}

TEST(BruteForce, FullConnectivityMinimum) {
  const auto inst = line_instance(2, 3, 1);
  const auto g = full_graph(inst);
  const auto best = brute_force_min_cut(g, inst, inst.roles().sources, 5);
  EXPECT_EQ(best.value, 3.0);
  EXPECT_EQ(best.cut.k(), 3u);
  const auto single = brute_force_min_cut(g, inst, std::vector<NodeId>{0}, 5);
  EXPECT_EQ(single.value, 3.0);
}

TEST(BruteForce, RejectsLargeM) {
  const auto inst = line_instance(1, 21, 1);
  const auto g = fixtures::empty_graph(inst);
  EXPECT_THROW(brute_force_min_cut(g, inst, std::vector<NodeId>{0}, 22), ConfigError);
}

namespace {

sinr::InstanceConfig disk_config() {
  sinr::InstanceConfig cfg;
  cfg.placement.n = 200;
  cfg.params.gamma = 0.0;
  cfg.relays = 100;
  return cfg;
}

}  // namespace

TEST(Cbar, DiskAreaOracle) {
  // With gamma = 0 a link exists iff d <= r* = L^-1(beta N0 / P0).
  const auto cfg = disk_config();
  const double r = cfg.path_loss.inverse(0.2 * 0.02 / 0.01);
  ASSERT_LE(r, 0.5);
  const double expected = std::numbers::pi * r * r;
  const auto est = estimate_cbar(cfg, 200, 11);
  EXPECT_GT(est.std_error, 0.0);
  EXPECT_NEAR(est.mean, expected, 3.0 * est.std_error);
}

TEST(Cbar, DiskAreaOracleWiderRadius) {
  auto cfg = disk_config();
  cfg.path_loss = geometry::PathLossModel(2e-3, 3.0, 0.01);
  cfg.params.rate = 2.0;
  const double r = cfg.path_loss.inverse(0.2 * 0.02 / 0.01);
  ASSERT_LE(r, 0.5);
  const auto est = estimate_cbar(cfg, 100, 12);
  EXPECT_NEAR(est.mean, 2.0 * std::numbers::pi * r * r, 3.0 * est.std_error);
}

TEST(Cbar, RangeAndDeterminism) {
  sinr::InstanceConfig cfg;
  cfg.placement.n = 500;
  cfg.relays = 50;
  const auto a = estimate_cbar(cfg, 20, 5);
  const auto b = estimate_cbar(cfg, 20, 5);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
  EXPECT_EQ(a.trials, 20u);
  EXPECT_GE(a.mean, 0.0);
  EXPECT_LE(a.mean, 1.0);
  CbarOptions threaded;
  threaded.threads = 4;
  EXPECT_EQ(estimate_cbar(cfg, 20, 5, threaded).mean, a.mean);
}

TEST(Cbar, DisjointSeedsAgree) {
  sinr::InstanceConfig cfg;
  cfg.placement.n = 500;
  cfg.relays = 80;
  const auto a = estimate_cbar(cfg, 60, 100);
  const auto b = estimate_cbar(cfg, 60, 200);
  EXPECT_NEAR(a.mean, b.mean, 6.0 * std::hypot(a.std_error, b.std_error));
}

TEST(Cbar, SampledPairsAndAllNodePool) {
  auto cfg = disk_config();
  const double r = cfg.path_loss.inverse(0.2 * 0.02 / 0.01);
  CbarOptions opt;
  opt.pool = PairPool::kAllNodes;
  opt.pairs_per_trial = 2000;
  const auto est = estimate_cbar(cfg, 60, 3, opt);
  EXPECT_NEAR(est.mean, std::numbers::pi * r * r, 3.0 * est.std_error);
  const auto single = estimate_cbar(cfg, 1, 3, opt);
  EXPECT_GT(single.std_error, 0.0);
}

TEST(Cbar, Errors) {
  auto cfg = disk_config();
  EXPECT_THROW(estimate_cbar(cfg, 0, 1), ConfigError);
  cfg.relays = 1;
  EXPECT_THROW(estimate_cbar(cfg, 5, 1), ConfigError);
}
