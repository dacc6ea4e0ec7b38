#pragma once

#include <cstdint>
#include <utility>

#include "hopbank/image.hpp"
#include "hopbank/weights.hpp"

namespace hopbank {

/// One "iteration" throughout this library is a single asynchronous
/// node update, not a full sweep.
inline constexpr std::uint64_t kDefaultProbeUpdates = 100;
inline constexpr std::uint64_t kDefaultMaxUpdates = 30000;

struct RunStats {
  std::uint64_t node_updates = 0;   // single-node updates performed
  std::uint64_t flips = 0;          // updates that changed the node
  double initial_energy = 0.0;
  double final_energy = 0.0;
  bool converged = false;           // a terminal full sweep produced zero flips
  std::uint64_t multiply_adds = 0;  // local-field multiply-add count
};

struct RunResult {
  BipolarState state;
  RunStats stats;
};

/// E = -1/2 sum_{i,j} W[i][j] s[i] s[j]. The zero diagonal contributes
/// nothing. Lower is more stable.
double energy(const WeightMatrix& w, const BipolarState& s);

/// Local field h_i = sum_j W[i][j] s[j].
double local_field(const WeightMatrix& w, const BipolarState& s, std::uint32_t i);

/// One asynchronous update of node i: s'[i] = sign(h_i), every other node
/// unchanged. A zero field holds the current state, so the rule never
/// introduces limit cycles through an arbitrary sign convention.
std::pair<BipolarState, bool> update_node(const WeightMatrix& w, const BipolarState& s,
                                          std::uint32_t i);

/// Exactly `updates` single-node updates. Nodes are visited in seeded
/// random permutation sweeps, a fresh permutation per full pass, so any n
/// consecutive updates cover every node once. Deterministic in
/// (w, s0, updates, seed); energy is non-increasing along the trajectory.
RunResult run_iterations(const WeightMatrix& w, const BipolarState& s0, std::uint64_t updates,
                         std::uint64_t seed);

/// Runs until a full sweep produces zero flips (converged, the state is a
/// fixed point) or the update budget is exhausted (converged == false).
/// max_updates must be at least n.
RunResult run_to_convergence(const WeightMatrix& w, const BipolarState& s0,
                             std::uint64_t max_updates, std::uint64_t seed);

}  // namespace hopbank
