#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sinrnc/bounds.hpp"
#include "sinrnc/cuts.hpp"
#include "sinrnc/io.hpp"
#include "sinrnc/maxflow.hpp"
#include "sinrnc/sinr.hpp"

namespace sinrnc::experiments {

struct ExperimentConfig {
  sinr::InstanceConfig instance;
  std::size_t trials = 10;
  Seed seed = 1;
  std::size_t cut_k = 50;
  double alpha_exp = 1.0;
  double eta = 1.0;
  std::size_t cbar_trials = 200;
  cuts::PairPool cbar_pool = cuts::PairPool::kRelays;
  // Worker cap; never affects results, so it is not part of the provenance.
  std::size_t threads = 1;

  void validate() const;
};

// Builds a config from "key = value" pairs. Unknown keys are an error.
ExperimentConfig config_from_key_values(const io::KeyValues& kv);
// Applies overrides on top of an existing config.
void apply_key_values(ExperimentConfig& cfg, const io::KeyValues& kv);
// Every key with defaults materialized, in a fixed order.
std::vector<std::pair<std::string, std::string>> resolved_config(const ExperimentConfig& cfg);
// Keys understood by config_from_key_values.
const std::vector<std::string>& config_keys();

enum class Study { kInterference, kRandomCut, kMinCut };
std::string to_string(Study s);

struct InterferenceRecord {
  std::size_t trial = 0;
  std::size_t node = 0;
  double j = 0.0;
  double i = 0.0;
  friend bool operator==(const InterferenceRecord&, const InterferenceRecord&) = default;
};

struct CutRecord {
  std::size_t trial = 0;
  std::size_t k = 0;
  double value = 0.0;
  friend bool operator==(const CutRecord&, const CutRecord&) = default;
};

struct MinCutRecord {
  std::size_t trial = 0;
  double value = 0.0;
  std::size_t argmin_destination = 0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  friend bool operator==(const MinCutRecord&, const MinCutRecord&) = default;
};

struct BandCounts {
  std::size_t below = 0;
  std::size_t inside = 0;
  std::size_t above = 0;
  friend bool operator==(const BandCounts&, const BandCounts&) = default;
};

/// Outcome of one concentration study.
///
/// `reference` is the value the band is centred on: the empirical mean
/// interference, [coefficient] * cbar for cut studies, or m * cbar for
/// min-cut studies. The band is [(1 - eps_lower) ref, (1 + eps_upper) ref];
/// `bound_lower` / `bound_upper` are the tail bounds the formulas attach to
/// each side (1 when vacuous).
struct ConcentrationReport {
  Study study = Study::kInterference;
  std::vector<std::pair<std::string, std::string>> config;

  std::vector<InterferenceRecord> interference;
  std::vector<CutRecord> cuts;
  std::vector<MinCutRecord> mincuts;

  std::size_t samples = 0;
  double mean = 0.0;
  double std_dev = 0.0;
  double std_error = 0.0;

  double mean_gain = 0.0;   // empirical E[L]
  double mean_power = 0.0;  // empirical E[P]
  double cbar = 0.0;
  double cbar_std_error = 0.0;
  std::size_t cbar_trials = 0;

  double reference = 0.0;
  double eps_lower = 0.0;
  double eps_upper = 0.0;
  double band_lo = 0.0;
  double band_hi = 0.0;
  BandCounts counts;
  bool lower_vacuous = false;
  bool upper_vacuous = false;
  double bound_lower = 1.0;
  double bound_upper = 1.0;

  friend bool operator==(const ConcentrationReport&, const ConcentrationReport&) = default;
};

// Per-trial building blocks, shared with callers that want to replay a trial.
sinr::NetworkInstance trial_instance(const ExperimentConfig& cfg, std::size_t trial);
cuts::CutSpec trial_cut(const ExperimentConfig& cfg, const sinr::NetworkInstance& inst,
                        std::size_t trial);
cuts::CbarEstimate campaign_cbar(const ExperimentConfig& cfg);

ConcentrationReport run_interference_study(const ExperimentConfig& cfg);
ConcentrationReport run_random_cut_study(const ExperimentConfig& cfg);
ConcentrationReport run_mincut_study(const ExperimentConfig& cfg);

struct OracleMismatch {
  std::size_t trial = 0;
  std::string model;
  std::size_t destination = 0;
  double maxflow = 0.0;
  double brute_force = 0.0;
  std::string instance;  // serialized for replay
};

struct OracleComparison {
  std::size_t trial = 0;
  std::size_t m = 0;
  std::string model;
  std::size_t destination = 0;
  double maxflow = 0.0;
  double brute_force = 0.0;
};

struct OracleReport {
  std::vector<std::pair<std::string, std::string>> config;
  std::size_t instances = 0;
  std::vector<OracleComparison> comparisons;
  std::vector<OracleMismatch> mismatches;
  double max_abs_diff_gaussian = 0.0;

  bool passed() const noexcept { return mismatches.empty(); }
};

inline constexpr std::size_t kOracleMaxRelays = 12;
inline constexpr double kGaussianOracleTolerance = 1e-9;

// Trial i uses m_i = 2 + i mod (m - 1) relays (m itself when m == 1), and
// compares max-flow against exhaustive partition enumeration under both
// capacity models for every destination.
OracleReport run_oracle_suite(const ExperimentConfig& cfg);

struct MeanInterference {
  double mean_gain = 0.0;          // E[L]
  double mean_power = 0.0;         // E[P]
  double mean_j = 0.0;             // E[J] = (n-1) E[L]
  double mean_i = 0.0;             // E[I]
};

// Empirical E[L], E[J], E[P], E[I] over `trials` fresh instances.
MeanInterference estimate_mean_interference(const sinr::InstanceConfig& config,
                                            std::size_t trials, Seed seed);

// CSV per study plus a JSON sidecar. File stems: interference, random_cut,
// mincut, oracle.
std::string report_csv(const ConcentrationReport& report);
std::string report_json(const ConcentrationReport& report);
ConcentrationReport report_from_json(const std::string& json);
std::string oracle_csv(const OracleReport& report);
std::string oracle_json(const OracleReport& report);

std::string study_stem(Study s);
void write_report(const ConcentrationReport& report, const std::filesystem::path& dir);
void write_oracle_report(const OracleReport& report, const std::filesystem::path& dir);

}  // namespace sinrnc::experiments
