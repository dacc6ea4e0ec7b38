#include "hopbank/dynamics.hpp"

#include <cassert>
#include <numeric>
#include <string>
#include <vector>

#include "hopbank/errors.hpp"
#include "hopbank/rng.hpp"

namespace hopbank {

namespace {

void check_dims(const WeightMatrix& w, const BipolarState& s) {
  if (s.size() != w.n()) {
    throw DimensionError("state length " + std::to_string(s.size()) + " for a " +
                         std::to_string(w.n()) + "-node network");
  }
}

// Shared engine. stop_on_convergence distinguishes the bounded probe run
// from the run-to-fixed-point loop; both visit nodes in seeded permutation
// sweeps so every n consecutive updates touch each node once.
RunResult run_impl(const WeightMatrix& w, const BipolarState& s0, std::uint64_t budget,
                   std::uint64_t seed, bool stop_on_convergence) {
  check_dims(w, s0);
  const std::uint32_t n = w.n();

  RunResult result{s0, {}};
  BipolarState& s = result.state;
  RunStats& stats = result.stats;
  stats.initial_energy = energy(w, s0);

#ifndef NDEBUG
  double tracked_energy = stats.initial_energy;
#endif

  Rng rng(seed);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);

  std::uint32_t pos = n;  // forces a fresh permutation on the first update
  std::uint64_t flips_in_sweep = 0;
  bool sweep_completed = false;
  bool last_sweep_clean = false;

  while (stats.node_updates < budget) {
    if (pos == n) {
      rng.shuffle(order);
      pos = 0;
      flips_in_sweep = 0;
    }
    const std::uint32_t i = order[pos++];

    const double h = local_field(w, s, i);
    stats.multiply_adds += n;

    const std::int8_t cur = s[i];
    const std::int8_t nxt = h > 0.0 ? 1 : (h < 0.0 ? -1 : cur);
    if (nxt != cur) {
      s.set(i, nxt);
      ++stats.flips;
      ++flips_in_sweep;
#ifndef NDEBUG
      // Flipping node i changes the energy by 2*cur*h, negative whenever
      // the update rule flips. Guards against a broken weight matrix.
      const double delta = 2.0 * cur * h;
      assert(delta <= 1e-9);
      tracked_energy += delta;
#endif
    }
    ++stats.node_updates;

    if (pos == n) {
      sweep_completed = true;
      last_sweep_clean = flips_in_sweep == 0;
      if (stop_on_convergence && last_sweep_clean) {
        stats.converged = true;
        break;
      }
    }
  }

  if (!stop_on_convergence) {
    // A bounded run counts as converged only when it ended exactly on a
    // zero-flip sweep boundary.
    stats.converged = sweep_completed && pos == n && last_sweep_clean;
  }

  stats.final_energy = energy(w, s);
#ifndef NDEBUG
  assert(stats.final_energy <= stats.initial_energy + 1e-9);
  (void)tracked_energy;
#endif
  return result;
}

}  // namespace

double energy(const WeightMatrix& w, const BipolarState& s) {
  check_dims(w, s);
  const std::uint32_t n = w.n();
  double acc = 0.0;
  for (std::uint32_t i = 0; i < n; ++i) {
    const double* row = w.row(i);
    double field = 0.0;
    for (std::uint32_t j = 0; j < n; ++j) {
      field += row[j] * s[j];
    }
    acc += field * s[i];
  }
  return -0.5 * acc;
}

double local_field(const WeightMatrix& w, const BipolarState& s, std::uint32_t i) {
  check_dims(w, s);
  if (i >= w.n()) {
    throw DimensionError("node " + std::to_string(i) + " of " + std::to_string(w.n()));
  }
  const double* row = w.row(i);
  double h = 0.0;
  for (std::uint32_t j = 0; j < w.n(); ++j) {
    h += row[j] * s[j];
  }
  return h;
}

std::pair<BipolarState, bool> update_node(const WeightMatrix& w, const BipolarState& s,
                                          std::uint32_t i) {
  const double h = local_field(w, s, i);
  BipolarState next = s;
  const std::int8_t value = h > 0.0 ? 1 : (h < 0.0 ? -1 : s[i]);
  const bool flipped = value != s[i];
  if (flipped) next.set(i, value);
  return {std::move(next), flipped};
}

RunResult run_iterations(const WeightMatrix& w, const BipolarState& s0, std::uint64_t updates,
                         std::uint64_t seed) {
  return run_impl(w, s0, updates, seed, false);
}

RunResult run_to_convergence(const WeightMatrix& w, const BipolarState& s0,
                             std::uint64_t max_updates, std::uint64_t seed) {
  if (max_updates < w.n()) {
    throw ParameterError("max_updates " + std::to_string(max_updates) +
                         " cannot cover one sweep of " + std::to_string(w.n()) + " nodes");
  }
  return run_impl(w, s0, max_updates, seed, true);
}

}  // namespace hopbank
