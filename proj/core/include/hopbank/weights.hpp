#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hopbank {

/// n x n dense symmetric weight matrix with an exactly zero diagonal.
/// Construction validates symmetry (1e-9 relative), the zero diagonal and
/// finiteness; after that the object is immutable.
class WeightMatrix {
 public:
  explicit WeightMatrix(std::uint32_t n);  // all-zero matrix
  WeightMatrix(std::uint32_t n, std::vector<double> row_major);

  std::uint32_t n() const { return n_; }

  double operator()(std::uint32_t i, std::uint32_t j) const {
    return w_[static_cast<std::size_t>(i) * n_ + j];
  }
  const double* row(std::uint32_t i) const { return w_.data() + static_cast<std::size_t>(i) * n_; }
  const std::vector<double>& data() const { return w_; }

  bool operator==(const WeightMatrix&) const = default;

 private:
  std::uint32_t n_;
  std::vector<double> w_;
};

struct BankGeometry {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;

  std::uint32_t n() const { return rows * cols; }
  bool operator==(const BankGeometry&) const = default;
};

/// K weight matrices over a shared geometry plus the pattern-id ->
/// network-index assignment recorded at training time. Every pattern is
/// stored in exactly one network.
class NetworkBank {
 public:
  NetworkBank(BankGeometry geometry, std::vector<WeightMatrix> networks,
              std::map<std::string, std::uint32_t> assignment);

  std::uint32_t k() const { return static_cast<std::uint32_t>(networks_.size()); }
  const BankGeometry& geometry() const { return geometry_; }
  std::uint32_t n() const { return geometry_.n(); }

  const WeightMatrix& network(std::uint32_t index) const;
  const std::vector<WeightMatrix>& networks() const { return networks_; }
  const std::map<std::string, std::uint32_t>& assignment() const { return assignment_; }

  /// Bytes actually held in weight storage (k * n^2 * 8 for a valid bank).
  std::uint64_t weight_bytes() const;

  bool operator==(const NetworkBank&) const = default;

 private:
  BankGeometry geometry_;
  std::vector<WeightMatrix> networks_;
  std::map<std::string, std::uint32_t> assignment_;
};

}  // namespace hopbank
