#include "hopbank/selector.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "hopbank/errors.hpp"
#include "hopbank/rng.hpp"
#include "parallel.hpp"

namespace hopbank {

namespace {

constexpr std::uint64_t kProbeStream = 0x70726f6265ULL;  // per-network probe runs
constexpr std::uint64_t kFinalStream = 0x66696e616cULL;  // the winner's convergence run

struct ProbeOutcome {
  NetworkProbe record;
  BipolarState state;  // where the probe left this network
};

std::vector<ProbeOutcome> probe_all(const NetworkBank& bank, const BipolarState& s,
                                    std::uint64_t probe_updates, std::uint64_t seed) {
  if (bank.k() == 0) throw InputError("bank holds no networks");
  if (s.size() != bank.n()) {
    throw DimensionError("input length " + std::to_string(s.size()) + " for bank n = " +
                         std::to_string(bank.n()));
  }
  if (probe_updates == 0) throw ParameterError("probe needs at least one update");

  std::vector<ProbeOutcome> outcomes(bank.k(), ProbeOutcome{{}, s});
  detail::parallel_for(bank.k(), [&](std::size_t k) {
    const WeightMatrix& w = bank.network(static_cast<std::uint32_t>(k));
    RunResult run = run_iterations(w, s, probe_updates, derive_seed(seed ^ kProbeStream, k));
    ProbeOutcome& out = outcomes[k];
    out.record.index = static_cast<std::uint32_t>(k);
    out.record.energy_before = run.stats.initial_energy;
    out.record.energy_after = run.stats.final_energy;
    out.record.delta = run.stats.initial_energy - run.stats.final_energy;
    out.state = std::move(run.state);
  });
  return outcomes;
}

SelectionReport rank(const std::vector<ProbeOutcome>& outcomes, std::uint64_t probe_updates) {
  SelectionReport report;
  report.probe_updates = probe_updates;
  report.probes.reserve(outcomes.size());
  for (const ProbeOutcome& out : outcomes) report.probes.push_back(out.record);

  // The winner is the network whose probed state sits at the lowest
  // energy. The input's home network holds a deep trained minimum nearby,
  // so its probe settles well below the shallow spurious descents of the
  // others. The drop delta_k alone cannot separate them: the home probe
  // starts already partway down its well (small remaining drop), while a
  // foreign network starts high and can fall further, so ranking by
  // delta_k inverts the decision. delta_k is still reported per probe.
  std::uint32_t best = 0;
  for (std::uint32_t k = 1; k < report.probes.size(); ++k) {
    if (report.probes[k].energy_after < report.probes[best].energy_after) best = k;
  }
  report.winner = best;
  for (std::uint32_t k = 0; k < report.probes.size(); ++k) {
    if (k != best && report.probes[k].energy_after == report.probes[best].energy_after) {
      report.tie_broken = true;
      break;
    }
  }
  return report;
}

}  // namespace

SelectionReport select_network(const NetworkBank& bank, const BipolarState& s,
                               std::uint64_t probe_updates, std::uint64_t seed) {
  return rank(probe_all(bank, s, probe_updates, seed), probe_updates);
}

DenoiseReport denoise(const NetworkBank& bank, const BinaryImage& img,
                      const DenoiseOptions& options, const TrainingSet* stored) {
  if (img.rows() != bank.geometry().rows || img.cols() != bank.geometry().cols) {
    throw DimensionError("image " + std::to_string(img.rows()) + "x" +
                         std::to_string(img.cols()) + " does not match bank geometry " +
                         std::to_string(bank.geometry().rows) + "x" +
                         std::to_string(bank.geometry().cols));
  }

  const BipolarState input = to_bipolar(vectorize(img));
  std::vector<ProbeOutcome> outcomes = probe_all(bank, input, options.probe_updates, options.seed);
  SelectionReport selection = rank(outcomes, options.probe_updates);

  // The winner continues from its probed state rather than restarting.
  RunResult final_run =
      run_to_convergence(bank.network(selection.winner), outcomes[selection.winner].state,
                         options.max_updates, derive_seed(options.seed ^ kFinalStream,
                                                          selection.winner));

  DenoiseReport report{std::move(selection), final_run.stats,
                       devectorize(to_binary(final_run.state), img.rows(), img.cols()),
                       std::nullopt, false};

  if (options.min_winner_delta &&
      report.selection.probes[report.selection.winner].delta < *options.min_winner_delta) {
    report.winner_below_threshold = true;
  }

  if (stored != nullptr) {
    const std::size_t count = std::min(stored->patterns.size(), stored->ids.size());
    for (std::size_t p = 0; p < count; ++p) {
      const auto it = bank.assignment().find(stored->ids[p]);
      if (it == bank.assignment().end() || it->second != report.selection.winner) continue;
      if (stored->patterns[p] == final_run.state) {
        report.matched_stored_id = stored->ids[p];
        break;
      }
    }
  }
  return report;
}

}  // namespace hopbank
