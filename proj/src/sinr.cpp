#include "sinrnc/sinr.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sinrnc/errors.hpp"

namespace sinrnc::sinr {

void SinrParams::validate() const {
  if (!(n0 > 0.0)) throw ConfigError("sinr: N0 must be > 0");
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("sinr: gamma must lie in [0, 1]");
  if (!(beta > 0.0)) throw ConfigError("sinr: beta must be > 0");
  if (!(rate > 0.0)) throw ConfigError("sinr: rate must be > 0");
}

// ---------------------------------------------------------------------------
// PowerModel

PowerModel::PowerModel(Kind kind, double p_min, double p_max, std::vector<Atom> atoms)
    : kind_(kind), p_min_(p_min), p_max_(p_max), atoms_(std::move(atoms)) {
  if (!(p_min > 0.0) || !(p_max >= p_min) || !std::isfinite(p_max)) {
    throw ConfigError("power: need 0 < p_min <= p_max < inf");
  }
}

PowerModel PowerModel::constant(double p0) { return PowerModel(Kind::kConstant, p0, p0, {}); }

PowerModel PowerModel::uniform(double p_min, double p_max) {
  return PowerModel(Kind::kUniform, p_min, p_max, {});
}

PowerModel PowerModel::discrete(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ConfigError("power: discrete model needs atoms");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!(a.probability > 0.0)) throw ConfigError("power: atom probabilities must be > 0");
    total += a.probability;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("power: atom probabilities must sum to 1");
  std::sort(atoms.begin(), atoms.end(),
            [](const Atom& a, const Atom& b) { return a.power < b.power; });
  const double lo = atoms.front().power;
  const double hi = atoms.back().power;
  return PowerModel(Kind::kDiscrete, lo, hi, std::move(atoms));
}

double PowerModel::mean() const noexcept {
  switch (kind_) {
    case Kind::kConstant:
      return p_min_;
    case Kind::kUniform:
      return 0.5 * (p_min_ + p_max_);
    case Kind::kDiscrete:
      return std::accumulate(atoms_.begin(), atoms_.end(), 0.0,
                             [](double s, const Atom& a) { return s + a.power * a.probability; });
  }
  return p_min_;
}

double PowerModel::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::kConstant:
      return p_min_;
    case Kind::kUniform:
      return p_min_ + (p_max_ - p_min_) * uniform01(rng);
    case Kind::kDiscrete: {
      double u = uniform01(rng);
      for (const auto& a : atoms_) {
        if (u < a.probability) return a.power;
        u -= a.probability;
      }
      return atoms_.back().power;
    }
  }
  return p_min_;
}

void PowerModel::validate(const SinrParams& params) const {
  if (!(p_min_ > params.beta * params.n0)) {
    throw ConfigError("power: p_min must exceed beta * N0");
  }
}

// ---------------------------------------------------------------------------
// NetworkInstance

NetworkInstance::NetworkInstance(std::vector<Node> nodes, Roles roles, SinrParams params,
                                 PowerModel power_model, CapacityModel capacity_model,
                                 PathLossModel path_loss)
    : nodes_(std::move(nodes)),
      roles_(std::move(roles)),
      role_of_(nodes_.size(), Role::kNone),
      params_(params),
      power_model_(std::move(power_model)),
      capacity_model_(capacity_model),
      path_loss_(path_loss) {
  if (nodes_.size() < 2) throw ConfigError("instance: need at least 2 nodes");
  params_.validate();
  power_model_.validate(params_);
  // Tolerate the last-ulp slack of values read back from text.
  const double lo = power_model_.p_min() * (1.0 - 1e-12);
  const double hi = power_model_.p_max() * (1.0 + 1e-12);
  for (const auto& n : nodes_) {
    if (!(n.position.x >= 0.0 && n.position.x < 1.0 && n.position.y >= 0.0 &&
          n.position.y < 1.0)) {
      throw ConfigError("instance: node coordinates must lie in [0, 1)");
    }
    if (!(n.power >= lo && n.power <= hi)) {
      throw ConfigError("instance: node power outside [p_min, p_max]");
    }
  }
  auto assign = [&](const std::vector<NodeId>& ids, Role role) {
    for (NodeId id : ids) {
      if (id >= nodes_.size()) throw ConfigError("instance: role id out of range");
      if (role_of_[id] != Role::kNone) throw ConfigError("instance: role sets must be disjoint");
      role_of_[id] = role;
    }
  };
  assign(roles_.sources, Role::kSource);
  assign(roles_.relays, Role::kRelay);
  assign(roles_.destinations, Role::kDestination);
}

NetworkInstance NetworkInstance::with_capacity_model(CapacityModel model) const {
  return NetworkInstance(nodes_, roles_, params_, power_model_, model, path_loss_);
}

NetworkInstance NetworkInstance::with_roles(Roles roles) const {
  return NetworkInstance(nodes_, std::move(roles), params_, power_model_, capacity_model_,
                         path_loss_);
}

double NetworkInstance::gain(NodeId i, NodeId j) const {
  return path_loss_.from_squared(
      geometry::torus_distance_squared(nodes_.at(i).position, nodes_.at(j).position));
}

std::vector<NodeId> NetworkInstance::role_nodes() const {
  std::vector<NodeId> out;
  out.reserve(roles_.sources.size() + roles_.relays.size() + roles_.destinations.size());
  out.insert(out.end(), roles_.sources.begin(), roles_.sources.end());
  out.insert(out.end(), roles_.relays.begin(), roles_.relays.end());
  out.insert(out.end(), roles_.destinations.begin(), roles_.destinations.end());
  return out;
}

void InstanceConfig::validate() const {
  params.validate();
  power.validate(params);
  if (placement.n < 2) throw ConfigError("config: need n >= 2");
  if (placement.mode == geometry::PlacementMode::kFixedCount && role_count() > placement.n) {
    throw ConfigError("config: h + m + l exceeds node count");
  }
}

Roles sequential_roles(std::size_t h, std::size_t m, std::size_t l) {
  Roles roles;
  NodeId next = 0;
  for (std::size_t i = 0; i < h; ++i) roles.sources.push_back(next++);
  for (std::size_t i = 0; i < m; ++i) roles.relays.push_back(next++);
  for (std::size_t i = 0; i < l; ++i) roles.destinations.push_back(next++);
  return roles;
}

NetworkInstance generate_instance(const InstanceConfig& config, Seed seed) {
  config.validate();
  auto placement = config.placement;
  placement.min_count = std::max(placement.min_count, config.role_count());
  const auto points = geometry::sample_nodes(placement, derive_seed(seed, stream::kPlacement));
  Rng power_rng(derive_seed(seed, stream::kPower));
  std::vector<Node> nodes(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    nodes[i] = {points[i], config.power.sample(power_rng)};
  }
  return NetworkInstance(std::move(nodes),
                         sequential_roles(config.sources, config.relays, config.destinations),
                         config.params, config.power, config.capacity_model, config.path_loss);
}

// ---------------------------------------------------------------------------
// Interference and link capacities

InterferenceSums interference_sums(const NetworkInstance& inst,
                                   std::span<const NodeId> receivers) {
  const auto& nodes = inst.nodes();
  const auto& pl = inst.path_loss();
  const bool constant = inst.power_model().kind() == PowerModel::Kind::kConstant;
  const double p0 = inst.power_model().p_min();
  InterferenceSums out{std::vector<double>(receivers.size(), 0.0),
                       std::vector<double>(receivers.size(), 0.0)};
  for (std::size_t r = 0; r < receivers.size(); ++r) {
    const NodeId j = receivers[r];
    const Point pj = nodes.at(j).position;
    double sum_j = 0.0;
    double sum_i = 0.0;
    for (NodeId k = 0; k < nodes.size(); ++k) {
      if (k == j) continue;
      const double g = pl.from_squared(geometry::torus_distance_squared(nodes[k].position, pj));
      sum_j += g;
      sum_i += nodes[k].power * g;
    }
    out.j[r] = sum_j;
    out.i[r] = constant ? p0 * sum_j : sum_i;
  }
  return out;
}

InterferenceSums interference_sums(const NetworkInstance& inst) {
  std::vector<NodeId> all(inst.size());
  std::iota(all.begin(), all.end(), NodeId{0});
  return interference_sums(inst, all);
}

namespace {

double sinr_from(double signal, double other_interference, const SinrParams& p) {
  const double denom = p.n0 + p.gamma * other_interference;
  if (!(denom > 0.0)) {
    throw DomainError("sinr: nonpositive denominator; coupled interference too small");
  }
  return signal / denom;
}

}  // namespace

double sinr(const NetworkInstance& inst, NodeId i, NodeId j, double interference_j) {
  if (i == j) throw ConfigError("sinr: i and j must differ");
  const double signal = inst.node(i).power * inst.gain(i, j);
  // I(j) includes node i's own contribution; remove it (k != i). Rounding
  // can leave a tiny negative remainder.
  return sinr_from(signal, std::max(0.0, interference_j - signal), inst.params());
}

double link_capacity(double beta_ij, const SinrParams& params, CapacityModel model) {
  if (beta_ij < params.beta) return 0.0;
  if (model == CapacityModel::kR0) return params.rate;
  return 0.5 * std::log2(1.0 + beta_ij);
}

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kG:
      return "G";
    case Variant::kGprime:
      return "Gprime";
    case Variant::kGdoubleprime:
      return "Gdoubleprime";
  }
  return "?";
}

std::string to_string(CapacityModel m) { return m == CapacityModel::kR0 ? "r0" : "gaussian"; }

// ---------------------------------------------------------------------------
// SinrGraph

SinrGraph::SinrGraph(std::size_t node_count, std::vector<NodeId> covered, Variant variant,
                     CapacityModel model, std::optional<double> e_i_used)
    : slot_(node_count, -1),
      covered_(std::move(covered)),
      cap_(covered_.size() * covered_.size(), 0.0),
      interference_j_(covered_.size(), 0.0),
      interference_i_(covered_.size(), 0.0),
      variant_(variant),
      model_(model),
      e_i_used_(e_i_used) {
  for (std::size_t s = 0; s < covered_.size(); ++s) {
    const NodeId id = covered_[s];
    if (id >= node_count || slot_[id] >= 0) {
      throw ConfigError("graph: covered ids must be unique and in range");
    }
    slot_[id] = static_cast<std::int32_t>(s);
  }
}

std::size_t SinrGraph::index(NodeId id) const {
  if (!covers(id)) throw ConfigError("graph: node " + std::to_string(id) + " not covered");
  return static_cast<std::size_t>(slot_[id]);
}

double SinrGraph::cap(NodeId i, NodeId j) const {
  return cap_[index(i) * covered_.size() + index(j)];
}

void SinrGraph::set_cap(NodeId i, NodeId j, double value) {
  if (i == j && value != 0.0) throw ConfigError("graph: self-loops must have zero capacity");
  if (!(value >= 0.0)) throw ConfigError("graph: negative capacity");
  cap_[index(i) * covered_.size() + index(j)] = value;
}

double SinrGraph::interference_j(NodeId j) const { return interference_j_[index(j)]; }
double SinrGraph::interference_i(NodeId j) const { return interference_i_[index(j)]; }

void SinrGraph::set_interference(NodeId j, double jj, double ii) {
  interference_j_[index(j)] = jj;
  interference_i_[index(j)] = ii;
}

std::size_t SinrGraph::edge_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cap_.begin(), cap_.end(), [](double c) { return c > 0.0; }));
}

SinrGraph build_graph(const NetworkInstance& inst, Variant variant,
                      std::optional<Coupling> coupling, GraphScope scope) {
  if (variant != Variant::kG && !coupling) {
    throw ConfigError("graph: coupled variant " + to_string(variant) +
                      " needs a mean interference value and eps pair");
  }
  std::vector<NodeId> covered;
  if (scope == GraphScope::kAll) {
    covered.resize(inst.size());
    std::iota(covered.begin(), covered.end(), NodeId{0});
  } else {
    covered = inst.role_nodes();
  }
  std::optional<double> e_i;
  double frozen = 0.0;
  if (variant != Variant::kG) {
    e_i = coupling->mean_interference;
    frozen = variant == Variant::kGprime ? (1.0 + coupling->eps_up) * *e_i
                                         : (1.0 - coupling->eps_down) * *e_i;
  }

  SinrGraph graph(inst.size(), covered, variant, inst.capacity_model(), e_i);
  const auto sums = interference_sums(inst, covered);
  const auto& params = inst.params();
  for (std::size_t r = 0; r < covered.size(); ++r) {
    const NodeId j = covered[r];
    graph.set_interference(j, sums.j[r], sums.i[r]);
    const double received = variant == Variant::kG ? sums.i[r] : frozen;
    for (const NodeId i : covered) {
      if (i == j) continue;
      const double signal = inst.node(i).power * inst.gain(i, j);
      // Interference from the other transmitters cannot be negative, also when
      // the frozen coupled value is below this link's own signal.
      const double other = std::max(0.0, received - signal);
      const double beta_ij = sinr_from(signal, other, params);
      const double c = link_capacity(beta_ij, params, inst.capacity_model());
      if (c > 0.0) graph.set_cap(i, j, c);
    }
  }
  return graph;
}

// ---------------------------------------------------------------------------
// Heterogeneous-power coupling radii and the annulus constraint

CouplingRadii coupling_radii(const SinrParams& params, const PathLossModel& path_loss,
                             double p_min, double p_max, const Coupling& coupling) {
  params.validate();
  if (!(p_min > 0.0) || !(p_max >= p_min)) throw DomainError("radii: need 0 < p_min <= p_max");
  if (!(coupling.mean_interference >= 0.0)) throw DomainError("radii: E[I] must be >= 0");
  const double scale = params.beta / (1.0 + params.gamma * params.beta);
  auto radius = [&](double factor, double p, const char* which) {
    const double noise = params.n0 + params.gamma * factor * coupling.mean_interference;
    if (!(noise > 0.0)) {
      throw DomainError(std::string("radii: nonpositive noise-plus-interference for ") + which);
    }
    const double target = scale * noise / p;
    try {
      return path_loss.inverse(target);
    } catch (const DomainError& e) {
      throw DomainError(std::string("radii: no pre-image for ") + which + ": " + e.what());
    }
  };
  const double up = 1.0 + coupling.eps_up;
  const double down = 1.0 - coupling.eps_down;
  return {{radius(up, p_min, "r_min'"), radius(up, p_max, "r_max'")},
          {radius(down, p_min, "r_min''"), radius(down, p_max, "r_max''")}};
}

AnnulusCheck annulus_check(const NetworkInstance& inst, Annulus radii, double eta) {
  if (!(radii.r_min >= 0.0) || !(radii.r_max >= radii.r_min)) {
    throw DomainError("annulus: need 0 <= r_min <= r_max");
  }
  AnnulusCheck out;
  out.r_min = radii.r_min;
  out.r_max = radii.r_max;
  out.eta = eta;
  out.counts.assign(inst.size(), 0);
  const auto& nodes = inst.nodes();
  for (NodeId i = 0; i < nodes.size(); ++i) {
    for (NodeId k = 0; k < nodes.size(); ++k) {
      if (k == i) continue;
      const double d = geometry::torus_distance(nodes[i].position, nodes[k].position);
      if (d > radii.r_min && d <= radii.r_max) ++out.counts[i];
    }
    if (static_cast<double>(out.counts[i]) > eta) out.satisfied = false;
  }
  return out;
}

}  // namespace sinrnc::sinr
