#include "sinrnc/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinrnc/bounds.hpp"
#include "sinrnc/errors.hpp"
#include "sinrnc/experiments.hpp"
#include "sinrnc/io.hpp"
#include "sinrnc/maxflow.hpp"

namespace sinrnc::cli {

namespace fs = std::filesystem;
using experiments::ExperimentConfig;

namespace {

struct Common {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  std::vector<std::string> overrides;
  int verbosity = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_out) {
  cmd->add_option("--config", c.config_path, "Flat key = value config file");
  if (with_out) cmd->add_option("--out", c.out_dir, "Output directory");
  cmd->add_option("--seed", c.seed, "Master seed (non-negative integer)");
  cmd->add_option("--threads", c.threads, "Worker cap")->check(CLI::PositiveNumber);
  cmd->add_option("--set", c.overrides, "Config override key=value (repeatable)");
  cmd->add_flag("-v,--verbose", c.verbosity, "More output");
}

ExperimentConfig load_config(const Common& c) {
  io::KeyValues kv;
  if (!c.config_path.empty()) kv = io::parse_key_values(io::read_file(c.config_path));
  for (const auto& item : c.overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + item + "'");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    kv[trim(item.substr(0, eq))] = trim(item.substr(eq + 1));
  }
  auto cfg = experiments::config_from_key_values(kv);
  if (c.seed) cfg.seed = *c.seed;
  if (c.threads) cfg.threads = *c.threads;
  return cfg;
}

fs::path prepare_out(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec || !fs::is_directory(p)) {
    throw ConfigError("cannot create output directory '" + dir + "'");
  }
  return p;
}

std::string ids(const std::vector<sinr::NodeId>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s.empty() ? "-" : s;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

// --- generate -------------------------------------------------------------

int cmd_generate(const Common& c, std::ostream& out) {
  auto cfg = load_config(c);
  cfg.validate();
  const auto dir = prepare_out(c.out_dir);
  const auto inst = experiments::trial_instance(cfg, 0);
  const auto graph = sinr::build_graph(inst);
  std::ostringstream is;
  std::ostringstream gs;
  io::write_instance(is, inst);
  io::write_graph(gs, graph);
  io::write_file(dir / "instance.txt", is.str());
  io::write_file(dir / "graph.txt", gs.str());
  const double edges = static_cast<double>(graph.edge_count());
  out << "nodes " << inst.size() << "\n";
  out << "edges " << graph.edge_count() << "\n";
  out << "mean_degree " << fmt(edges / static_cast<double>(inst.size())) << "\n";
  if (c.verbosity > 0) out << "wrote " << (dir / "instance.txt").string() << "\n";
  return kExitOk;
}

// --- capacity -------------------------------------------------------------

struct CapacityArgs {
  std::string instance_path;
  std::string graph_path;
  std::string sources;
  std::string relays;
  std::string destinations;
};

int cmd_capacity(const CapacityArgs& a, std::ostream& out) {
  std::istringstream in(io::read_file(a.instance_path));
  auto inst = io::read_instance(in);
  if (!a.sources.empty() || !a.relays.empty() || !a.destinations.empty()) {
    sinr::Roles roles = inst.roles();
    if (!a.sources.empty()) roles.sources = io::parse_id_list("--sources", a.sources);
    if (!a.destinations.empty()) {
      roles.destinations = io::parse_id_list("--destinations", a.destinations);
    }
    if (!a.relays.empty()) {
      roles.relays = io::parse_id_list("--relays", a.relays);
    } else {
      std::set<sinr::NodeId> taken(roles.sources.begin(), roles.sources.end());
      taken.insert(roles.destinations.begin(), roles.destinations.end());
      std::erase_if(roles.relays, [&](sinr::NodeId v) { return taken.count(v) > 0; });
    }
    inst = inst.with_roles(std::move(roles));
  }
  const auto& roles = inst.roles();
  if (roles.sources.empty() || roles.destinations.empty()) {
    throw ConfigError("capacity: instance needs at least one source and one destination");
  }
  std::optional<sinr::SinrGraph> graph;
  if (!a.graph_path.empty()) {
    std::istringstream gin(io::read_file(a.graph_path));
    graph = io::read_graph(gin);
    if (graph->node_count() != inst.size()) {
      throw ConfigError("capacity: graph and instance node counts differ");
    }
  } else {
    graph = sinr::build_graph(inst, sinr::Variant::kG, std::nullopt, sinr::GraphScope::kRoles);
  }
  const auto res = roles.sources.size() == 1
                       ? maxflow::capacity_single_source(*graph, inst, roles.sources.front(),
                                                         roles.destinations)
                       : maxflow::capacity_multi_source(*graph, inst, roles.sources,
                                                        roles.destinations);
  std::vector<sinr::NodeId> sink_relays;
  for (auto r : roles.relays) {
    if (!std::binary_search(res.witness.cut_spec.source_side.begin(),
                            res.witness.cut_spec.source_side.end(), r)) {
      sink_relays.push_back(r);
    }
  }
  out << "capacity " << io::format_double(res.value) << "\n";
  out << "argmin_destination " << res.argmin_destination << "\n";
  out << "source_side_relays " << ids(res.witness.cut_spec.source_side) << "\n";
  out << "sink_side_relays " << ids(sink_relays) << "\n";
  return kExitOk;
}

// --- experiment -----------------------------------------------------------

const std::vector<std::string> kStudies = {"interference", "random-cut", "mincut", "oracle"};

int cmd_experiment(const Common& c, const std::string& study, std::optional<std::size_t> k,
                   std::ostream& out) {
  if (std::find(kStudies.begin(), kStudies.end(), study) == kStudies.end()) {
    std::string names;
    for (const auto& s : kStudies) names += (names.empty() ? "" : ", ") + s;
    throw ConfigError("unknown study '" + study + "' (valid: " + names + ")");
  }
  auto cfg = load_config(c);
  if (k) cfg.cut_k = *k;
  cfg.validate();
  const auto dir = prepare_out(c.out_dir);
  if (study == "oracle") {
    const auto report = experiments::run_oracle_suite(cfg);
    experiments::write_oracle_report(report, dir);
    out << "oracle instances " << report.instances << " comparisons " << report.comparisons.size()
        << " mismatches " << report.mismatches.size() << "\n";
    out << (report.passed() ? "PASS" : "FAIL") << "\n";
    return report.passed() ? kExitOk : kExitVerificationFailure;
  }
  experiments::ConcentrationReport report;
  if (study == "interference") {
    report = experiments::run_interference_study(cfg);
  } else if (study == "random-cut") {
    report = experiments::run_random_cut_study(cfg);
  } else {
    report = experiments::run_mincut_study(cfg);
  }
  experiments::write_report(report, dir);
  out << "study " << study << "\n";
  out << "samples " << report.samples << "\n";
  out << "mean " << fmt(report.mean) << "\n";
  out << "reference " << fmt(report.reference) << "\n";
  out << "band " << fmt(report.band_lo) << " " << fmt(report.band_hi) << "\n";
  out << "below " << report.counts.below << " inside " << report.counts.inside << " above "
      << report.counts.above << "\n";
  if (c.verbosity > 0) {
    out << "wrote " << (dir / (experiments::study_stem(report.study) + ".csv")).string() << "\n";
  }
  return kExitOk;
}

// --- bounds ---------------------------------------------------------------

struct BoundsArgs {
  std::string report_path;
  std::optional<std::size_t> n;
  std::optional<std::size_t> m;
  std::optional<double> mean_gain;
  std::optional<double> mean_power;
  std::optional<double> cbar;
  std::optional<std::size_t> k;
  double eps = 0.1;
};

void row(std::ostream& out, const std::string& name, const std::string& formula,
         std::optional<double> value, bool vacuous = false) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-12s %-28s %s", name.c_str(), formula.c_str(),
                value ? fmt(*value).c_str() : "n/a");
  out << buf << (vacuous ? "  vacuous" : "") << "\n";
}

int cmd_bounds(const Common& c, const BoundsArgs& a, std::ostream& out) {
  auto cfg = load_config(c);
  std::optional<double> mean_gain = a.mean_gain;
  std::optional<double> mean_power = a.mean_power;
  std::optional<double> cbar = a.cbar;
  if (!a.report_path.empty()) {
    const auto rep = experiments::report_from_json(io::read_file(a.report_path));
    io::KeyValues kv(rep.config.begin(), rep.config.end());
    experiments::apply_key_values(cfg, kv);
    if (!mean_gain && rep.mean_gain > 0.0) mean_gain = rep.mean_gain;
    if (!mean_power && rep.mean_power > 0.0) mean_power = rep.mean_power;
    if (!cbar && rep.cbar > 0.0) cbar = rep.cbar;
  }
  if (a.n) cfg.instance.placement.n = *a.n;
  if (a.m) cfg.instance.relays = *a.m;
  if (a.k) cfg.cut_k = *a.k;
  if (!mean_power) mean_power = cfg.instance.power.mean();
  if (cfg.instance.placement.n < 2) throw ConfigError("bounds: n must be >= 2");
  if (!(a.eps > 0.0)) throw ConfigError("bounds: --eps must be > 0");

  const auto& ic = cfg.instance;
  const std::size_t n = ic.placement.n;
  const std::size_t m = ic.relays;
  out << "n " << n << " m " << m << " k " << cfg.cut_k << " eps " << fmt(a.eps) << "\n";

  if (mean_gain) {
    const auto e1 = bounds::lemma1_epsilons(n, *mean_gain);
    row(out, "eps1", "sqrt(4 ln n/((n-1)E_L))", e1.lower, e1.lower_vacuous);
    row(out, "eps1'", "sqrt(6 ln n/((n-1)E_L))", e1.upper);
    const auto e2 = bounds::lemma3_epsilons(n, *mean_power, *mean_gain);
    row(out, "eps2", "sqrt(4 ln n/((n-1)E_P E_L))", e2.lower, e2.lower_vacuous);
    row(out, "eps2'", "sqrt(6 ln n/((n-1)E_P E_L))", e2.upper);
    row(out, "chernoff_lo", "exp(-(n-1)E_L eps1^2/2)",
        e1.lower_vacuous ? std::optional<double>()
                         : bounds::chernoff_tail(e1.mean, e1.lower, bounds::Tail::kLower),
        e1.lower_vacuous);
    row(out, "chernoff_hi", "exp(-(n-1)E_L eps1'^2/3)",
        bounds::chernoff_tail(e1.mean, e1.upper, bounds::Tail::kUpper));
  } else {
    row(out, "eps1", "needs --mean-gain", std::nullopt);
  }

  if (cbar && m >= 2) {
    bounds::BoundParams bp;
    bp.n = n;
    bp.m = m;
    bp.l = ic.destinations;
    bp.h = ic.sources;
    bp.mean_gain = mean_gain.value_or(0.0);
    bp.mean_power = *mean_power;
    bp.cbar = *cbar;
    bp.eta = cfg.eta;
    bp.rate = ic.params.rate;
    bp.alpha_exp = cfg.alpha_exp;
    const auto te = bounds::theorem_epsilons(bp);
    row(out, "eps_a'", "sqrt(2a ln m/(m cbar))", te.constant_lower, te.constant_lower >= 1.0);
    row(out, "eps_a''", "sqrt(3a ln m/(m cbar))", te.constant_upper);
    row(out, "eps_a", "(eta+1)R sqrt(2a m ln m)/(m cbar)", te.heterogeneous,
        te.heterogeneous >= 1.0);
    if (cfg.cut_k <= m) {
      const bool lower_ok = a.eps < 1.0;
      auto cb = [&](bounds::CutBoundKind kind) {
        return bounds::cut_bound(kind, m, cfg.cut_k, *cbar, a.eps, cfg.eta, ic.params.rate);
      };
      row(out, "lemma2_lo", "exp(-[m+k(m-k)]cbar eps^2/2)",
          lower_ok ? std::optional<double>(cb(bounds::CutBoundKind::kLemma2Lower)) : std::nullopt,
          !lower_ok);
      row(out, "lemma2_hi", "exp(-[m+k(m-k)]cbar eps^2/3)",
          cb(bounds::CutBoundKind::kLemma2Upper));
      row(out, "lemma5", "exp(-[..]cbar^2 eps^2/(2(eta+1)^2R^2))",
          lower_ok ? std::optional<double>(cb(bounds::CutBoundKind::kLemma5Lower)) : std::nullopt,
          !lower_ok);
      const std::size_t links = cuts::cut_link_count(m, cfg.cut_k);
      const double lambda = a.eps * static_cast<double>(links) * *cbar;
      const std::vector<double> inc(links, (cfg.eta + 1.0) * ic.params.rate);
      row(out, "azuma", "exp(-lambda^2/(2 sum c_i^2))", bounds::azuma_bound(lambda, inc));
    }
  } else {
    row(out, "eps_a", "needs --cbar and m >= 2", std::nullopt);
  }

  const auto b = bounds::b_constant(ic.power.p_min(), ic.power.p_max(), ic.path_loss.c(),
                                    ic.params.gamma, ic.params.beta, ic.path_loss.alpha());
  row(out, "B", "exponent 2a", b.displayed);
  row(out, "B_inverse", "exponent 2/a", b.inverse_consistent);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"SINR network-coding capacity experiments", "sinrnc"};
  app.require_subcommand(1);

  Common generate_opts;
  auto* generate = app.add_subcommand("generate", "Write an instance and its capacity matrix");
  add_common(generate, generate_opts, true);

  CapacityArgs cap;
  auto* capacity = app.add_subcommand("capacity", "Min-cut capacity of a saved instance");
  capacity->add_option("--instance", cap.instance_path, "Instance file")->required();
  capacity->add_option("--graph", cap.graph_path, "Capacity matrix file");
  capacity->add_option("--sources", cap.sources, "Source ids, comma separated");
  capacity->add_option("--relays", cap.relays, "Relay ids, comma separated");
  capacity->add_option("--destinations", cap.destinations, "Destination ids, comma separated");

  Common exp_opts;
  std::string study;
  std::optional<std::size_t> k;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo study");
  add_common(experiment, exp_opts, true);
  experiment->add_option("--study", study, "interference | random-cut | mincut | oracle")
      ->required();
  experiment->add_option("--k", k, "Random cut size");

  Common bounds_opts;
  BoundsArgs bargs;
  auto* bounds_cmd = app.add_subcommand("bounds", "Print the concentration constants");
  add_common(bounds_cmd, bounds_opts, false);
  bounds_cmd->add_option("--report", bargs.report_path, "JSON sidecar from a prior experiment");
  bounds_cmd->add_option("--n", bargs.n, "Node count");
  bounds_cmd->add_option("--m", bargs.m, "Relay count");
  bounds_cmd->add_option("--k", bargs.k, "Cut size");
  bounds_cmd->add_option("--mean-gain", bargs.mean_gain, "Empirical E[L]");
  bounds_cmd->add_option("--mean-power", bargs.mean_power, "Empirical E[P]");
  bounds_cmd->add_option("--cbar", bargs.cbar, "Empirical mean link capacity");
  bounds_cmd->add_option("--eps", bargs.eps, "Deviation used for the tail bounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(generate_opts, out);
    if (*capacity) return cmd_capacity(cap, out);
    if (*experiment) return cmd_experiment(exp_opts, study, k, out);
    if (*bounds_cmd) return cmd_bounds(bounds_opts, bargs, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (...) {
    err << "error: unknown failure\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("sinrnc");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace sinrnc::cli
