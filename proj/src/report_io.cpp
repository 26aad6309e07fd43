#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "sinrnc/errors.hpp"
#include "sinrnc/experiments.hpp"

namespace sinrnc::experiments {

using Json = nlohmann::ordered_json;

namespace {

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_number(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("report: bad number '" + s + "'");
  }
  return j.get<double>();
}

Study study_from_string(const std::string& s) {
  for (auto st : {Study::kInterference, Study::kRandomCut, Study::kMinCut}) {
    if (to_string(st) == s) return st;
  }
  throw ConfigError("report: unknown study '" + s + "'");
}

Json config_json(const std::vector<std::pair<std::string, std::string>>& cfg) {
  Json out = Json::object();
  for (const auto& [k, v] : cfg) out[k] = v;
  return out;
}

std::string g(double v) { return io::format_double(v); }

}  // namespace

std::string report_csv(const ConcentrationReport& r) {
  std::ostringstream out;
  switch (r.study) {
    case Study::kInterference:
      out << "trial,node_id,J,I\n";
      for (const auto& rec : r.interference) {
        out << rec.trial << ',' << rec.node << ',' << g(rec.j) << ',' << g(rec.i) << '\n';
      }
      break;
    case Study::kRandomCut:
      out << "trial,k,cut_capacity\n";
      for (const auto& rec : r.cuts) {
        out << rec.trial << ',' << rec.k << ',' << g(rec.value) << '\n';
      }
      break;
    case Study::kMinCut:
      out << "trial,value,argmin_destination,band_lo,band_hi\n";
      for (const auto& rec : r.mincuts) {
        out << rec.trial << ',' << g(rec.value) << ',' << rec.argmin_destination << ','
            << g(rec.band_lo) << ',' << g(rec.band_hi) << '\n';
      }
      break;
  }
  return out.str();
}

std::string report_json(const ConcentrationReport& r) {
  Json j;
  j["study"] = to_string(r.study);
  j["config"] = config_json(r.config);
  j["summary"] = {{"samples", r.samples},
                  {"mean", number(r.mean)},
                  {"std_dev", number(r.std_dev)},
                  {"std_error", number(r.std_error)}};
  j["estimates"] = {{"mean_gain", number(r.mean_gain)},
                    {"mean_power", number(r.mean_power)},
                    {"cbar", number(r.cbar)},
                    {"cbar_std_error", number(r.cbar_std_error)},
                    {"cbar_trials", r.cbar_trials}};
  j["band"] = {{"reference", number(r.reference)},
               {"eps_lower", number(r.eps_lower)},
               {"eps_upper", number(r.eps_upper)},
               {"lo", number(r.band_lo)},
               {"hi", number(r.band_hi)},
               {"below", r.counts.below},
               {"inside", r.counts.inside},
               {"above", r.counts.above},
               {"lower_vacuous", r.lower_vacuous},
               {"upper_vacuous", r.upper_vacuous},
               {"bound_lower", number(r.bound_lower)},
               {"bound_upper", number(r.bound_upper)}};
  Json records = Json::array();
  for (const auto& rec : r.interference) {
    records.push_back({{"trial", rec.trial}, {"node_id", rec.node}, {"J", number(rec.j)},
                       {"I", number(rec.i)}});
  }
  for (const auto& rec : r.cuts) {
    records.push_back({{"trial", rec.trial}, {"k", rec.k}, {"cut_capacity", number(rec.value)}});
  }
  for (const auto& rec : r.mincuts) {
    records.push_back({{"trial", rec.trial},
                       {"value", number(rec.value)},
                       {"argmin_destination", rec.argmin_destination},
                       {"band_lo", number(rec.band_lo)},
                       {"band_hi", number(rec.band_hi)}});
  }
  j["records"] = std::move(records);
  return j.dump(2) + "\n";
}

ConcentrationReport report_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("report: invalid JSON: ") + e.what());
  }
  try {
    ConcentrationReport r;
    r.study = study_from_string(j.at("study").get<std::string>());
    for (const auto& [k, v] : j.at("config").items()) r.config.emplace_back(k, v.get<std::string>());
    const auto& s = j.at("summary");
    r.samples = s.at("samples").get<std::size_t>();
    r.mean = to_number(s.at("mean"));
    r.std_dev = to_number(s.at("std_dev"));
    r.std_error = to_number(s.at("std_error"));
    const auto& e = j.at("estimates");
    r.mean_gain = to_number(e.at("mean_gain"));
    r.mean_power = to_number(e.at("mean_power"));
    r.cbar = to_number(e.at("cbar"));
    r.cbar_std_error = to_number(e.at("cbar_std_error"));
    r.cbar_trials = e.at("cbar_trials").get<std::size_t>();
    const auto& b = j.at("band");
    r.reference = to_number(b.at("reference"));
    r.eps_lower = to_number(b.at("eps_lower"));
    r.eps_upper = to_number(b.at("eps_upper"));
    r.band_lo = to_number(b.at("lo"));
    r.band_hi = to_number(b.at("hi"));
    r.counts.below = b.at("below").get<std::size_t>();
    r.counts.inside = b.at("inside").get<std::size_t>();
    r.counts.above = b.at("above").get<std::size_t>();
    r.lower_vacuous = b.at("lower_vacuous").get<bool>();
    r.upper_vacuous = b.at("upper_vacuous").get<bool>();
    r.bound_lower = to_number(b.at("bound_lower"));
    r.bound_upper = to_number(b.at("bound_upper"));
    for (const auto& rec : j.at("records")) {
      switch (r.study) {
        case Study::kInterference:
          r.interference.push_back({rec.at("trial").get<std::size_t>(),
                                    rec.at("node_id").get<std::size_t>(), to_number(rec.at("J")),
                                    to_number(rec.at("I"))});
          break;
        case Study::kRandomCut:
          r.cuts.push_back({rec.at("trial").get<std::size_t>(), rec.at("k").get<std::size_t>(),
                            to_number(rec.at("cut_capacity"))});
          break;
        case Study::kMinCut:
          r.mincuts.push_back({rec.at("trial").get<std::size_t>(), to_number(rec.at("value")),
                               rec.at("argmin_destination").get<std::size_t>(),
                               to_number(rec.at("band_lo")), to_number(rec.at("band_hi"))});
          break;
      }
    }
    return r;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("report: malformed field: ") + e.what());
  }
}

std::string oracle_csv(const OracleReport& r) {
  std::ostringstream out;
  out << "trial,m,model,destination,maxflow,brute_force,abs_diff\n";
  for (const auto& c : r.comparisons) {
    out << c.trial << ',' << c.m << ',' << c.model << ',' << c.destination << ',' << g(c.maxflow)
        << ',' << g(c.brute_force) << ',' << g(std::abs(c.maxflow - c.brute_force)) << '\n';
  }
  return out.str();
}

std::string oracle_json(const OracleReport& r) {
  Json j;
  j["study"] = "oracle";
  j["config"] = config_json(r.config);
  j["instances"] = r.instances;
  j["comparisons"] = r.comparisons.size();
  j["passed"] = r.passed();
  j["max_abs_diff_gaussian"] = number(r.max_abs_diff_gaussian);
  Json mismatches = Json::array();
  for (const auto& m : r.mismatches) {
    mismatches.push_back({{"trial", m.trial},
                          {"model", m.model},
                          {"destination", m.destination},
                          {"maxflow", number(m.maxflow)},
                          {"brute_force", number(m.brute_force)},
                          {"instance", m.instance}});
  }
  j["mismatches"] = std::move(mismatches);
  return j.dump(2) + "\n";
}

void write_report(const ConcentrationReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto stem = study_stem(report.study);
  io::write_file(dir / (stem + ".csv"), report_csv(report));
  io::write_file(dir / (stem + ".json"), report_json(report));
}

void write_oracle_report(const OracleReport& report, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  io::write_file(dir / "oracle.csv", oracle_csv(report));
  io::write_file(dir / "oracle.json", oracle_json(report));
}

}  // namespace sinrnc::experiments
