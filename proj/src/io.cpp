#include "sinrnc/io.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <algorithm>
#include <tuple>
#include <sstream>

#include "sinrnc/errors.hpp"

namespace sinrnc::io {

using sinr::CapacityModel;
using sinr::NetworkInstance;
using sinr::PowerModel;
using sinr::Role;
using sinr::SinrGraph;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& key, const std::string& value) {
  const char* begin = value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ConfigError("'" + key + "': not a number: '" + value + "'");
  }
  return v;
}

std::size_t parse_size(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("'" + key + "': not a non-negative integer: '" + value + "'");
  }
  return v;
}

std::vector<std::size_t> parse_id_list(const std::string& key, const std::string& value) {
  std::vector<std::size_t> ids;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    ids.push_back(parse_size(key, item));
  }
  return ids;
}

namespace {

const char* role_name(Role r) {
  switch (r) {
    case Role::kSource:
      return "source";
    case Role::kRelay:
      return "relay";
    case Role::kDestination:
      return "destination";
    case Role::kNone:
      return "none";
  }
  return "none";
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

// Reads the next non-empty line; throws on EOF.
std::vector<std::string> next_tokens(std::istream& in, const char* what) {
  std::string line;
  while (std::getline(in, line)) {
    auto toks = split_ws(line);
    if (!toks.empty()) return toks;
  }
  throw ConfigError(std::string("unexpected end of file, expected ") + what);
}

void expect(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

CapacityModel model_from(const std::string& s) {
  if (s == "r0") return CapacityModel::kR0;
  if (s == "gaussian") return CapacityModel::kGaussian;
  throw ConfigError("unknown capacity model '" + s + "'");
}

sinr::Variant variant_from(const std::string& s) {
  if (s == "G") return sinr::Variant::kG;
  if (s == "Gprime") return sinr::Variant::kGprime;
  if (s == "Gdoubleprime") return sinr::Variant::kGdoubleprime;
  throw ConfigError("unknown graph variant '" + s + "'");
}

}  // namespace

std::string power_to_string(const PowerModel& power) {
  switch (power.kind()) {
    case PowerModel::Kind::kConstant:
      return "constant " + format_double(power.p_min());
    case PowerModel::Kind::kUniform:
      return "uniform " + format_double(power.p_min()) + " " + format_double(power.p_max());
    case PowerModel::Kind::kDiscrete: {
      std::string s = "discrete ";
      bool first = true;
      for (const auto& a : power.atoms()) {
        if (!first) s += ",";
        s += format_double(a.power) + ":" + format_double(a.probability);
        first = false;
      }
      return s;
    }
  }
  return "";
}

PowerModel power_from_tokens(const std::vector<std::string>& t) {
  expect(!t.empty(), "power: missing kind");
  if (t[0] == "constant" && t.size() == 2) return PowerModel::constant(parse_double("power", t[1]));
  if (t[0] == "uniform" && t.size() == 3) {
    return PowerModel::uniform(parse_double("power", t[1]), parse_double("power", t[2]));
  }
  if (t[0] == "discrete" && t.size() == 2) {
    std::vector<PowerModel::Atom> atoms;
    std::stringstream ss(t[1]);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      expect(colon != std::string::npos, "power: discrete atoms are <power>:<probability>");
      atoms.push_back({parse_double("power", item.substr(0, colon)),
                       parse_double("power", item.substr(colon + 1))});
    }
    return PowerModel::discrete(std::move(atoms));
  }
  throw ConfigError("power: expected 'constant P', 'uniform LO HI' or 'discrete p:q,...'");
}

void write_instance(std::ostream& out, const NetworkInstance& inst) {
  const auto& p = inst.params();
  const auto& pl = inst.path_loss();
  out << "sinrnc-instance 1\n";
  out << "param n0 " << format_double(p.n0) << "\n";
  out << "param gamma " << format_double(p.gamma) << "\n";
  out << "param beta " << format_double(p.beta) << "\n";
  out << "param rate " << format_double(p.rate) << "\n";
  out << "param capacity_model " << sinr::to_string(inst.capacity_model()) << "\n";
  out << "param pl_c " << format_double(pl.c()) << "\n";
  out << "param pl_alpha " << format_double(pl.alpha()) << "\n";
  out << "param pl_d0 " << format_double(pl.d0()) << "\n";
  out << "power " << power_to_string(inst.power_model()) << "\n";
  out << "nodes " << inst.size() << "\n";
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& n = inst.node(i);
    out << i << ' ' << format_double(n.position.x) << ' ' << format_double(n.position.y) << ' '
        << format_double(n.power) << ' ' << role_name(inst.role_of(i)) << '\n';
  }
}

NetworkInstance read_instance(std::istream& in) {
  auto header = next_tokens(in, "header");
  expect(header.size() == 2 && header[0] == "sinrnc-instance", "instance: bad header");
  expect(header[1] == "1", "instance: unsupported version " + header[1]);

  KeyValues params;
  std::vector<std::string> power_tokens;
  std::vector<std::string> toks;
  while (true) {
    toks = next_tokens(in, "'nodes' line");
    if (toks[0] == "param") {
      expect(toks.size() == 3, "instance: 'param' takes a key and a value");
      params[toks[1]] = toks[2];
    } else if (toks[0] == "power") {
      power_tokens.assign(toks.begin() + 1, toks.end());
    } else {
      break;
    }
  }
  expect(toks.size() == 2 && toks[0] == "nodes", "instance: expected 'nodes <count>'");
  const std::size_t count = parse_size("nodes", toks[1]);

  auto need = [&](const char* key) {
    auto it = params.find(key);
    expect(it != params.end(), std::string("instance: missing param ") + key);
    return it->second;
  };
  sinr::SinrParams sp;
  sp.n0 = parse_double("n0", need("n0"));
  sp.gamma = parse_double("gamma", need("gamma"));
  sp.beta = parse_double("beta", need("beta"));
  sp.rate = parse_double("rate", need("rate"));
  const auto model = model_from(need("capacity_model"));
  const sinr::PathLossModel pl(parse_double("pl_c", need("pl_c")),
                               parse_double("pl_alpha", need("pl_alpha")),
                               parse_double("pl_d0", need("pl_d0")));
  expect(!power_tokens.empty(), "instance: missing 'power' line");
  auto power = power_from_tokens(power_tokens);

  std::vector<sinr::Node> nodes(count);
  sinr::Roles roles;
  for (std::size_t i = 0; i < count; ++i) {
    toks = next_tokens(in, "node line");
    expect(toks.size() == 5, "instance: node line needs 5 fields");
    expect(parse_size("id", toks[0]) == i, "instance: node ids must be 0..n-1 in order");
    nodes[i] = {{parse_double("x", toks[1]), parse_double("y", toks[2])},
                parse_double("power", toks[3])};
    const std::string& role = toks[4];
    if (role == "source") {
      roles.sources.push_back(i);
    } else if (role == "relay") {
      roles.relays.push_back(i);
    } else if (role == "destination") {
      roles.destinations.push_back(i);
    } else {
      expect(role == "none", "instance: unknown role '" + role + "'");
    }
  }
  return NetworkInstance(std::move(nodes), std::move(roles), sp, std::move(power), model, pl);
}

void write_graph(std::ostream& out, const SinrGraph& graph) {
  std::vector<std::tuple<std::size_t, std::size_t, double>> entries;
  for (auto i : graph.covered()) {
    for (auto j : graph.covered()) {
      const double c = i == j ? 0.0 : graph.cap(i, j);
      if (c > 0.0) entries.emplace_back(i, j, c);
    }
  }
  std::sort(entries.begin(), entries.end());
  out << "sinrnc-capacity 1\n";
  out << "nodes " << graph.node_count() << "\n";
  out << "variant " << sinr::to_string(graph.variant()) << "\n";
  out << "model " << sinr::to_string(graph.capacity_model()) << "\n";
  out << "entries " << entries.size() << "\n";
  for (const auto& [i, j, c] : entries) out << i << ' ' << j << ' ' << format_double(c) << '\n';
}

SinrGraph read_graph(std::istream& in) {
  auto toks = next_tokens(in, "header");
  expect(toks.size() == 2 && toks[0] == "sinrnc-capacity", "graph: bad header");
  expect(toks[1] == "1", "graph: unsupported version " + toks[1]);
  auto field = [&](const char* name) {
    auto t = next_tokens(in, name);
    expect(t.size() == 2 && t[0] == name, std::string("graph: expected '") + name + "'");
    return t[1];
  };
  const std::size_t n = parse_size("nodes", field("nodes"));
  const auto variant = variant_from(field("variant"));
  const auto model = model_from(field("model"));
  const std::size_t count = parse_size("entries", field("entries"));
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  SinrGraph graph(n, std::move(all), variant, model, std::nullopt);
  for (std::size_t e = 0; e < count; ++e) {
    toks = next_tokens(in, "entry");
    expect(toks.size() == 3, "graph: entry needs 3 fields");
    const auto i = parse_size("i", toks[0]);
    const auto j = parse_size("j", toks[1]);
    expect(i < n && j < n && i != j, "graph: entry index out of range");
    graph.set_cap(i, j, parse_double("capacity", toks[2]));
  }
  return graph;
}

std::string instance_to_string(const NetworkInstance& inst) {
  std::ostringstream ss;
  write_instance(ss, inst);
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace sinrnc::io
