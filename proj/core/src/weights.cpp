#include "hopbank/weights.hpp"

#include <cmath>
#include <string>

#include "hopbank/errors.hpp"

namespace hopbank {

WeightMatrix::WeightMatrix(std::uint32_t n) : n_(n) {
  if (n == 0) throw DimensionError("weight matrix needs at least one node");
  w_.assign(static_cast<std::size_t>(n) * n, 0.0);
}

WeightMatrix::WeightMatrix(std::uint32_t n, std::vector<double> row_major)
    : n_(n), w_(std::move(row_major)) {
  if (n == 0) throw DimensionError("weight matrix needs at least one node");
  if (w_.size() != static_cast<std::size_t>(n) * n) {
    throw DimensionError("weight data length " + std::to_string(w_.size()) + " for n = " +
                         std::to_string(n));
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::size_t base = static_cast<std::size_t>(i) * n;
    if (w_[base + i] != 0.0) {
      throw DomainError("nonzero diagonal at " + std::to_string(i));
    }
    for (std::uint32_t j = i; j < n; ++j) {
      const double a = w_[base + j];
      const double b = w_[static_cast<std::size_t>(j) * n + i];
      if (!std::isfinite(a) || !std::isfinite(b)) {
        throw InputError("non-finite weight at (" + std::to_string(i) + "," + std::to_string(j) +
                         ")");
      }
      if (std::fabs(a - b) > 1e-9 * std::fmax(1.0, std::fabs(a))) {
        throw DomainError("asymmetric weights at (" + std::to_string(i) + "," +
                          std::to_string(j) + ")");
      }
    }
  }
}

NetworkBank::NetworkBank(BankGeometry geometry, std::vector<WeightMatrix> networks,
                         std::map<std::string, std::uint32_t> assignment)
    : geometry_(geometry), networks_(std::move(networks)), assignment_(std::move(assignment)) {
  if (geometry_.rows == 0 || geometry_.cols == 0) {
    throw DimensionError("bank geometry must be positive");
  }
  for (const WeightMatrix& w : networks_) {
    if (w.n() != geometry_.n()) {
      throw DimensionError("network node count " + std::to_string(w.n()) +
                           " does not match geometry n = " + std::to_string(geometry_.n()));
    }
  }
  for (const auto& [id, index] : assignment_) {
    if (index >= networks_.size()) {
      throw InputError("pattern '" + id + "' assigned to network " + std::to_string(index) +
                       " of " + std::to_string(networks_.size()));
    }
  }
}

const WeightMatrix& NetworkBank::network(std::uint32_t index) const {
  if (index >= networks_.size()) {
    throw DimensionError("network index " + std::to_string(index) + " of " +
                         std::to_string(networks_.size()));
  }
  return networks_[index];
}

std::uint64_t NetworkBank::weight_bytes() const {
  std::uint64_t bytes = 0;
  for (const WeightMatrix& w : networks_) {
    bytes += static_cast<std::uint64_t>(w.data().size()) * sizeof(double);
  }
  return bytes;
}

}  // namespace hopbank
