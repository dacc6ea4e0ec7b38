#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hopbank/dynamics.hpp"
#include "hopbank/image.hpp"
#include "hopbank/training.hpp"
#include "hopbank/weights.hpp"

namespace hopbank {

struct NetworkProbe {
  std::uint32_t index = 0;
  double energy_before = 0.0;  // E_k of the shared input
  double energy_after = 0.0;   // E'_k after the probe run
  double delta = 0.0;          // E_k - E'_k, never negative
};

struct SelectionReport {
  std::vector<NetworkProbe> probes;  // exactly k records, indices 0..k-1
  std::uint32_t winner = 0;          // lowest probed energy E'_k, ties to the lowest index
  std::uint64_t probe_updates = 0;
  bool tie_broken = false;
};

struct DenoiseOptions {
  std::uint64_t probe_updates = kDefaultProbeUpdates;
  std::uint64_t max_updates = kDefaultMaxUpdates;
  std::uint64_t seed = 0;
  /// Optional winner-delta floor; no default. When set and the winning
  /// delta falls below it, the report flags the input as likely stored in
  /// no network. Denoising still completes.
  std::optional<double> min_winner_delta;
};

struct DenoiseReport {
  SelectionReport selection;
  RunStats final_stats;          // the winner's run to convergence
  BinaryImage output;
  std::optional<std::string> matched_stored_id;  // exact match among the winner's patterns
  bool winner_below_threshold = false;
};

/// Probes every network with the same input for `probe_updates` updates
/// (per-network seeds derive from `seed`, probes may run concurrently) and
/// selects the network whose probed state reaches the lowest energy. The
/// network holding the input as a stored memory descends into that deep
/// minimum; the rest stall around shallow spurious states. Each record
/// also carries the probe's energy drop delta_k.
SelectionReport select_network(const NetworkBank& bank, const BipolarState& s,
                               std::uint64_t probe_updates, std::uint64_t seed);

/// End-to-end: vectorize, select the owning network, run it from its
/// probed state to convergence, reshape the fixed point back to an image.
/// When `stored` is supplied, the output is compared against the winner's
/// stored patterns and an exact match is reported by id.
DenoiseReport denoise(const NetworkBank& bank, const BinaryImage& img,
                      const DenoiseOptions& options, const TrainingSet* stored = nullptr);

}  // namespace hopbank
