#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopbank/image.hpp"
#include "hopbank/weights.hpp"

namespace hopbank {

/// Patterns to be stored, with parallel unique identifiers.
struct TrainingSet {
  std::vector<BipolarState> patterns;
  std::vector<std::string> ids;

  std::size_t size() const { return patterns.size(); }
  std::size_t n() const { return patterns.empty() ? 0 : patterns.front().size(); }

  /// Throws InputError on empty/mismatched ids, DimensionError on ragged
  /// pattern lengths.
  void validate() const;
};

/// Plain dense square matrix, row-major, no invariants beyond squareness.
/// The working currency of the learning rules before a result is promoted
/// to a WeightMatrix.
struct SquareMatrix {
  std::uint32_t n = 0;
  std::vector<double> m;

  static SquareMatrix zero(std::uint32_t n);
  double at(std::uint32_t i, std::uint32_t j) const {
    return m[static_cast<std::size_t>(i) * n + j];
  }
  double& at(std::uint32_t i, std::uint32_t j) {
    return m[static_cast<std::size_t>(i) * n + j];
  }
};

enum class LearningRule {
  PseudoinverseHebbian,  // pinv of the zero-diagonal Hebbian matrix, diagonal re-zeroed
  Projection,            // X (X^T X)^-1 X^T with zeroed diagonal
  Hebbian,               // plain outer-product sum
};

/// Parses "paper" | "projection" | "hebbian" (the CLI rule names).
LearningRule parse_rule(const std::string& name);
std::string rule_name(LearningRule rule);

/// W[i][j] = sum_p xi_p[i] * xi_p[j] for i != j, diagonal zero. The sum is
/// unnormalized; sign dynamics and within-bank delta comparison are
/// invariant under uniform positive scaling.
WeightMatrix hebbian_weights(const TrainingSet& ts);

/// Copies M with its diagonal forced to exactly zero. Idempotent.
SquareMatrix zero_diagonal(SquareMatrix m);

/// Moore-Penrose pseudo-inverse by SVD: singular values above
/// rtol * sigma_max are inverted, the rest dropped. Throws InputError on
/// non-finite entries, ParameterError on rtol <= 0.
SquareMatrix moore_penrose_pinv(const SquareMatrix& m, double rtol = 1e-10);

/// The default learning rule: pinv of the zero-diagonal Hebbian matrix,
/// diagonal zeroed again. Throws CapacityError when pattern count exceeds
/// n, TrainingError when the Hebbian matrix is identically zero.
WeightMatrix pseudoinverse_rule_weights(const TrainingSet& ts, double rtol = 1e-10);

/// X (X^T X)^-1 X^T without diagonal zeroing; stored patterns are exact
/// eigenvectors with eigenvalue 1. Throws TrainingError when the patterns
/// are linearly dependent.
SquareMatrix projection_matrix(const TrainingSet& ts);

/// Reference comparator: projection_matrix with zeroed diagonal.
WeightMatrix projection_rule_weights(const TrainingSet& ts);

/// Partitions the patterns into k near-equal disjoint sets by a seeded
/// uniform shuffle and trains one network per set (concurrently). Set
/// sizes differ by at most one. `geometry` records the image shape the
/// patterns were flattened from and must satisfy rows*cols == ts.n().
/// Throws CapacityError when the per-network load exceeds n.
NetworkBank train_bank(const TrainingSet& ts, BankGeometry geometry, std::uint32_t k,
                       LearningRule rule, std::uint64_t seed);

/// The partition used by train_bank: shuffled ids dealt into k slices.
/// Exposed so callers can recover ground-truth assignment deterministically.
std::vector<std::vector<std::uint32_t>> partition_indices(std::size_t count, std::uint32_t k,
                                                          std::uint64_t seed);

}  // namespace hopbank
