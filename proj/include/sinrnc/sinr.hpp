#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sinrnc/geometry.hpp"
#include "sinrnc/random.hpp"

namespace sinrnc::sinr {

using geometry::PathLossModel;
using geometry::Point;
using NodeId = std::size_t;

enum class CapacityModel { kR0, kGaussian };

struct SinrParams {
  double n0 = 0.02;     // background noise power
  double gamma = 0.02;  // inverse processing gain
  double beta = 0.2;    // decoding threshold
  double rate = 1.0;    // R in the R-0 model

  void validate() const;
};

/// Distribution of per-node transmit power over [p_min, p_max].
///
/// Construction enforces p_min > beta * N0 only through validate(), since the
/// power model is usually built before the SINR parameters are known.
class PowerModel {
 public:
  enum class Kind { kConstant, kUniform, kDiscrete };
  struct Atom {
    double power;
    double probability;
  };

  static PowerModel constant(double p0);
  static PowerModel uniform(double p_min, double p_max);
  static PowerModel discrete(std::vector<Atom> atoms);

  Kind kind() const noexcept { return kind_; }
  double p_min() const noexcept { return p_min_; }
  double p_max() const noexcept { return p_max_; }
  double mean() const noexcept;
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }

  double sample(Rng& rng) const;
  void validate(const SinrParams& params) const;

 private:
  PowerModel(Kind kind, double p_min, double p_max, std::vector<Atom> atoms);

  Kind kind_;
  double p_min_;
  double p_max_;
  std::vector<Atom> atoms_;
};

enum class Role : std::uint8_t { kNone, kSource, kRelay, kDestination };

struct Roles {
  std::vector<NodeId> sources;
  std::vector<NodeId> relays;
  std::vector<NodeId> destinations;
};

struct Node {
  Point position;
  double power = 0.0;
};

// A placed network with powers and role assignment. Immutable once built.
class NetworkInstance {
 public:
  NetworkInstance(std::vector<Node> nodes, Roles roles, SinrParams params,
                  PowerModel power_model, CapacityModel capacity_model,
                  PathLossModel path_loss);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  const Node& node(NodeId id) const { return nodes_.at(id); }
  const Roles& roles() const noexcept { return roles_; }
  Role role_of(NodeId id) const { return role_of_.at(id); }
  const SinrParams& params() const noexcept { return params_; }
  const PowerModel& power_model() const noexcept { return power_model_; }
  CapacityModel capacity_model() const noexcept { return capacity_model_; }
  const PathLossModel& path_loss() const noexcept { return path_loss_; }

  // Same placement and powers, different capacity model.
  NetworkInstance with_capacity_model(CapacityModel model) const;
  // Same placement and powers, different role assignment.
  NetworkInstance with_roles(Roles roles) const;

  // Attenuation L(d_ij) between two nodes.
  double gain(NodeId i, NodeId j) const;

  // Role ids in source, relay, destination order.
  std::vector<NodeId> role_nodes() const;

 private:
  std::vector<Node> nodes_;
  Roles roles_;
  std::vector<Role> role_of_;
  SinrParams params_;
  PowerModel power_model_;
  CapacityModel capacity_model_;
  PathLossModel path_loss_;
};

// Everything needed to draw a random instance.
struct InstanceConfig {
  geometry::PlacementModel placement{geometry::PlacementMode::kFixedCount, 2000};
  PowerModel power = PowerModel::constant(0.01);
  SinrParams params;
  PathLossModel path_loss{1e-3 / 64.0, 3.0, 0.01};
  CapacityModel capacity_model = CapacityModel::kR0;
  std::size_t sources = 1;
  std::size_t relays = 100;
  std::size_t destinations = 1;

  std::size_t role_count() const noexcept { return sources + relays + destinations; }
  void validate() const;
};

// Roles are the first h nodes (sources), the next m (relays), the next l
// (destinations); remaining nodes only interfere.
NetworkInstance generate_instance(const InstanceConfig& config, Seed seed);
Roles sequential_roles(std::size_t h, std::size_t m, std::size_t l);

struct InterferenceSums {
  std::vector<double> j;  // J(j) = sum_{k != j} L(d_kj)
  std::vector<double> i;  // I(j) = sum_{k != j} P_k L(d_kj)
};

// J and I at every node; every node transmits.
InterferenceSums interference_sums(const NetworkInstance& inst);
// J and I at the listed receivers only, summed over all transmitters.
InterferenceSums interference_sums(const NetworkInstance& inst,
                                   std::span<const NodeId> receivers);

// SINR of link i -> j given the total received power I(j) at j.
double sinr(const NetworkInstance& inst, NodeId i, NodeId j, double interference_j);

double link_capacity(double beta_ij, const SinrParams& params, CapacityModel model);

enum class Variant { kG, kGprime, kGdoubleprime };

std::string to_string(Variant v);
std::string to_string(CapacityModel m);

// Frozen interference for the coupled graphs. `mean_interference` is E[I] in
// received-power units; with constant power P0 that is P0 * E[J].
struct Coupling {
  double mean_interference = 0.0;
  double eps_down = 0.0;  // G'' uses (1 - eps_down) * E[I]
  double eps_up = 0.0;    // G'  uses (1 + eps_up) * E[I]

  static Coupling from_mean_gain(double mean_j, double p0, double eps_down,
                                 double eps_up) {
    return {mean_j * p0, eps_down, eps_up};
  }
};

// kRoles restricts the capacity matrix to source, relay and destination nodes.
// Interference still counts every node as a transmitter.
enum class GraphScope { kAll, kRoles };

class SinrGraph {
 public:
  SinrGraph(std::size_t node_count, std::vector<NodeId> covered, Variant variant,
            CapacityModel model, std::optional<double> e_i_used);

  std::size_t node_count() const noexcept { return slot_.size(); }
  std::span<const NodeId> covered() const noexcept { return covered_; }
  bool covers(NodeId id) const noexcept {
    return id < slot_.size() && slot_[id] >= 0;
  }
  Variant variant() const noexcept { return variant_; }
  CapacityModel capacity_model() const noexcept { return model_; }
  std::optional<double> e_i_used() const noexcept { return e_i_used_; }

  // Capacity C_ij; both nodes must be covered.
  double cap(NodeId i, NodeId j) const;
  void set_cap(NodeId i, NodeId j, double value);

  // Interference at a covered receiver (zero if not computed, e.g. for
  // graphs read back from disk).
  double interference_j(NodeId j) const;
  double interference_i(NodeId j) const;
  void set_interference(NodeId j, double jj, double ii);

  std::size_t edge_count() const noexcept;

 private:
  std::size_t index(NodeId id) const;

  std::vector<std::int32_t> slot_;
  std::vector<NodeId> covered_;
  std::vector<double> cap_;
  std::vector<double> interference_j_;
  std::vector<double> interference_i_;
  Variant variant_;
  CapacityModel model_;
  std::optional<double> e_i_used_;
};

SinrGraph build_graph(const NetworkInstance& inst, Variant variant = Variant::kG,
                      std::optional<Coupling> coupling = std::nullopt,
                      GraphScope scope = GraphScope::kAll);

struct Annulus {
  double r_min = 0.0;
  double r_max = 0.0;
};

// Radii where a p_min / p_max transmitter exactly meets the threshold in the
// coupled graphs. `pessimistic` is G' (interference (1 + eps_up) E[I]),
// `optimistic` is G'' ((1 - eps_down) E[I]).
struct CouplingRadii {
  Annulus pessimistic;
  Annulus optimistic;
};

CouplingRadii coupling_radii(const SinrParams& params, const PathLossModel& path_loss,
                             double p_min, double p_max, const Coupling& coupling);

struct AnnulusCheck {
  double r_min = 0.0;
  double r_max = 0.0;
  std::vector<std::size_t> counts;
  double eta = 0.0;
  bool satisfied = true;
};

// Per node i, the number of k != i with r_in < d_ik <= r_out.
AnnulusCheck annulus_check(const NetworkInstance& inst, Annulus radii, double eta);

}  // namespace sinrnc::sinr
