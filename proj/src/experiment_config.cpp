#include <algorithm>
#include <string>

#include "sinrnc/errors.hpp"
#include "sinrnc/experiments.hpp"

namespace sinrnc::experiments {

namespace {

using io::format_double;
using io::parse_double;
using io::parse_size;

std::string pool_name(cuts::PairPool p) { return p == cuts::PairPool::kRelays ? "relays" : "all"; }

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "n",           "placement", "power",   "p0",        "p_min",          "p_max",
      "power_atoms", "n0",        "gamma",   "beta",      "rate",           "capacity_model",
      "pl_c",        "pl_alpha",  "pl_d0",   "sources",   "relays",         "destinations",
      "trials",      "seed",      "cut_k",   "alpha_exp", "eta",            "cbar_trials",
      "cbar_pool",   "threads"};
  return keys;
}

void ExperimentConfig::validate() const {
  instance.validate();
  if (trials == 0) throw ConfigError("config: trials must be >= 1");
  if (cbar_trials == 0) throw ConfigError("config: cbar_trials must be >= 1");
  if (!(alpha_exp > 0.0)) throw ConfigError("config: alpha_exp must be > 0");
  if (!(eta >= 0.0)) throw ConfigError("config: eta must be >= 0");
}

void apply_key_values(ExperimentConfig& cfg, const io::KeyValues& kv) {
  const auto& known = config_keys();
  for (const auto& [key, value] : kv) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("config: unknown key '" + key + "'");
    }
  }
  auto get = [&](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto& inst = cfg.instance;

  if (auto v = get("n")) inst.placement.n = parse_size("n", *v);
  if (auto v = get("placement")) {
    if (*v == "fixed") {
      inst.placement.mode = geometry::PlacementMode::kFixedCount;
    } else if (*v == "poisson") {
      inst.placement.mode = geometry::PlacementMode::kPoissonCount;
    } else {
      throw ConfigError("config: placement must be 'fixed' or 'poisson'");
    }
  }

  // Power: rebuild from the current model plus overrides.
  {
    using Kind = sinr::PowerModel::Kind;
    const auto& cur = inst.power;
    std::string kind = cur.kind() == Kind::kConstant  ? "constant"
                       : cur.kind() == Kind::kUniform ? "uniform"
                                                      : "discrete";
    if (auto v = get("power")) kind = *v;
    const bool touched = get("power") || get("p0") || get("p_min") || get("p_max") ||
                         get("power_atoms");
    if (touched) {
      if (kind == "constant") {
        double p0 = cur.p_min();
        if (auto v = get("p0")) p0 = parse_double("p0", *v);
        inst.power = sinr::PowerModel::constant(p0);
      } else if (kind == "uniform") {
        double lo = cur.p_min();
        double hi = cur.p_max();
        if (auto v = get("p_min")) lo = parse_double("p_min", *v);
        if (auto v = get("p_max")) hi = parse_double("p_max", *v);
        inst.power = sinr::PowerModel::uniform(lo, hi);
      } else if (kind == "discrete") {
        auto v = get("power_atoms");
        if (!v && cur.kind() != Kind::kDiscrete) {
          throw ConfigError("config: discrete power needs power_atoms = p:q,...");
        }
        if (v) inst.power = io::power_from_tokens({"discrete", *v});
      } else {
        throw ConfigError("config: power must be constant, uniform or discrete");
      }
    }
  }

  if (auto v = get("n0")) inst.params.n0 = parse_double("n0", *v);
  if (auto v = get("gamma")) inst.params.gamma = parse_double("gamma", *v);
  if (auto v = get("beta")) inst.params.beta = parse_double("beta", *v);
  if (auto v = get("rate")) inst.params.rate = parse_double("rate", *v);
  if (auto v = get("capacity_model")) {
    if (*v == "r0") {
      inst.capacity_model = sinr::CapacityModel::kR0;
    } else if (*v == "gaussian") {
      inst.capacity_model = sinr::CapacityModel::kGaussian;
    } else {
      throw ConfigError("config: capacity_model must be r0 or gaussian");
    }
  }
  if (get("pl_c") || get("pl_alpha") || get("pl_d0")) {
    double c = inst.path_loss.c();
    double a = inst.path_loss.alpha();
    double d0 = inst.path_loss.d0();
    if (auto v = get("pl_c")) c = parse_double("pl_c", *v);
    if (auto v = get("pl_alpha")) a = parse_double("pl_alpha", *v);
    if (auto v = get("pl_d0")) d0 = parse_double("pl_d0", *v);
    inst.path_loss = geometry::PathLossModel(c, a, d0);
  }
  if (auto v = get("sources")) inst.sources = parse_size("sources", *v);
  if (auto v = get("relays")) inst.relays = parse_size("relays", *v);
  if (auto v = get("destinations")) inst.destinations = parse_size("destinations", *v);
  if (auto v = get("trials")) cfg.trials = parse_size("trials", *v);
  if (auto v = get("seed")) cfg.seed = parse_size("seed", *v);
  if (auto v = get("cut_k")) cfg.cut_k = parse_size("cut_k", *v);
  if (auto v = get("alpha_exp")) cfg.alpha_exp = parse_double("alpha_exp", *v);
  if (auto v = get("eta")) cfg.eta = parse_double("eta", *v);
  if (auto v = get("cbar_trials")) cfg.cbar_trials = parse_size("cbar_trials", *v);
  if (auto v = get("cbar_pool")) {
    if (*v == "relays") {
      cfg.cbar_pool = cuts::PairPool::kRelays;
    } else if (*v == "all") {
      cfg.cbar_pool = cuts::PairPool::kAllNodes;
    } else {
      throw ConfigError("config: cbar_pool must be 'relays' or 'all'");
    }
  }
  if (auto v = get("threads")) cfg.threads = std::max<std::size_t>(1, parse_size("threads", *v));
}

ExperimentConfig config_from_key_values(const io::KeyValues& kv) {
  ExperimentConfig cfg;
  apply_key_values(cfg, kv);
  return cfg;
}

std::vector<std::pair<std::string, std::string>> resolved_config(const ExperimentConfig& cfg) {
  using Kind = sinr::PowerModel::Kind;
  const auto& inst = cfg.instance;
  std::vector<std::pair<std::string, std::string>> out;
  out.emplace_back("n", std::to_string(inst.placement.n));
  out.emplace_back("placement",
                   inst.placement.mode == geometry::PlacementMode::kFixedCount ? "fixed" : "poisson");
  switch (inst.power.kind()) {
    case Kind::kConstant:
      out.emplace_back("power", "constant");
      out.emplace_back("p0", format_double(inst.power.p_min()));
      break;
    case Kind::kUniform:
      out.emplace_back("power", "uniform");
      out.emplace_back("p_min", format_double(inst.power.p_min()));
      out.emplace_back("p_max", format_double(inst.power.p_max()));
      break;
    case Kind::kDiscrete:
      out.emplace_back("power", "discrete");
      out.emplace_back("power_atoms", io::power_to_string(inst.power).substr(9));
      break;
  }
  out.emplace_back("n0", format_double(inst.params.n0));
  out.emplace_back("gamma", format_double(inst.params.gamma));
  out.emplace_back("beta", format_double(inst.params.beta));
  out.emplace_back("rate", format_double(inst.params.rate));
  out.emplace_back("capacity_model", sinr::to_string(inst.capacity_model));
  out.emplace_back("pl_c", format_double(inst.path_loss.c()));
  out.emplace_back("pl_alpha", format_double(inst.path_loss.alpha()));
  out.emplace_back("pl_d0", format_double(inst.path_loss.d0()));
  out.emplace_back("sources", std::to_string(inst.sources));
  out.emplace_back("relays", std::to_string(inst.relays));
  out.emplace_back("destinations", std::to_string(inst.destinations));
  out.emplace_back("trials", std::to_string(cfg.trials));
  out.emplace_back("seed", std::to_string(cfg.seed));
  out.emplace_back("cut_k", std::to_string(cfg.cut_k));
  out.emplace_back("alpha_exp", format_double(cfg.alpha_exp));
  out.emplace_back("eta", format_double(cfg.eta));
  out.emplace_back("cbar_trials", std::to_string(cfg.cbar_trials));
  out.emplace_back("cbar_pool", pool_name(cfg.cbar_pool));
  return out;
}

}  // namespace sinrnc::experiments
