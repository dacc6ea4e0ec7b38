#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hopbank/image.hpp"
#include "hopbank/training.hpp"

namespace hopbank {

/// Corruption model named on the command line and in bench configs:
/// "gaussian:<sigma2>", "saltpepper:<d>", "corner-sp:<d>",
/// "corner-fill:0" or "corner-fill:1". The corner variants act on
/// default_corner_region of the target image.
struct NoiseSpec {
  enum class Kind { Gaussian, SaltPepper, CornerSaltPepper, CornerFill };

  Kind kind = Kind::Gaussian;
  double param = 0.3;  // sigma2 | d | d | fill value

  bool operator==(const NoiseSpec&) const = default;
};

NoiseSpec parse_noise_spec(const std::string& text);
std::string to_string(const NoiseSpec& spec);

/// Applies the corruption; seeded, deterministic.
BinaryImage apply_noise(const BinaryImage& img, const NoiseSpec& spec, std::uint64_t seed);

struct ExperimentConfig {
  std::uint32_t rows = 21;
  std::uint32_t cols = 21;
  std::uint32_t k = 4;
  std::uint32_t patterns_per_network = 30;
  LearningRule rule = LearningRule::PseudoinverseHebbian;
  NoiseSpec noise{};
  std::uint32_t trials = 200;
  std::uint64_t probe_updates = 100;
  std::uint64_t max_updates = 30000;
  std::uint64_t seed = 0;

  std::uint32_t n() const { return rows * cols; }
  void validate() const;  // throws ParameterError
};

struct TrialRecord {
  std::uint32_t trial = 0;
  std::uint32_t true_network = 0;
  std::uint32_t selected_network = 0;
  bool selection_correct = false;
  bool exact_match = false;
  std::uint64_t hamming_distance = 0;
  std::uint64_t node_updates = 0;  // probe updates across the bank + final run
  double wall_ms = 0.0;            // measured, never asserted, kept out of the CSV
};

struct BenchAggregates {
  bool valid = false;  // false when there are no trials
  double selection_accuracy = 0.0;
  double exact_recovery_rate = 0.0;
  double mean_hamming = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  std::uint64_t bank_weight_bytes = 0;        // k * n^2 * 8, verified against storage
  std::uint64_t merged_equivalent_bytes = 0;  // (k*n)^2 * 8 for one merged network
};

struct BenchReport {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  BenchAggregates aggregates;
};

/// Trains a synthetic bank for cfg, then per trial: pick a stored pattern
/// uniformly, corrupt it, denoise, record selection correctness, exact
/// recovery, hamming distance and update counts. Trials run concurrently;
/// per-trial seeds derive from cfg.seed, so the report is identical
/// regardless of worker count.
BenchReport run_experiment(const ExperimentConfig& cfg);

/// Parses `key = value` lines ('#' comments allowed). Keys: rows, cols, k,
/// patterns_per_network, rule, noise, trials, probe_updates, max_updates,
/// seed; all required. k takes a comma-separated list and yields one
/// config per value. Errors name the offending line or missing key.
std::vector<ExperimentConfig> parse_bench_config(const std::string& text);

/// One row per trial plus an aggregate footer block per report.
/// Deterministic: wall-clock columns are deliberately absent.
void write_csv(std::ostream& out, std::span<const BenchReport> reports);

/// Human-readable summary including the latency percentiles.
std::string format_summary(const BenchReport& report);

}  // namespace hopbank
