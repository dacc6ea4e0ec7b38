#include "hopbank/training.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hopbank/errors.hpp"
#include "hopbank/rng.hpp"
#include "parallel.hpp"

namespace hopbank {

namespace {

using EigenRowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr std::uint64_t kPartitionStream = 0x7061727469746eULL;  // train_bank shuffle

// Exact symmetrization: both (i,j) and (j,i) get the same double.
void symmetrize(SquareMatrix& m) {
  for (std::uint32_t i = 0; i < m.n; ++i) {
    for (std::uint32_t j = i + 1; j < m.n; ++j) {
      const double v = 0.5 * (m.at(i, j) + m.at(j, i));
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
}

WeightMatrix promote(SquareMatrix m) {
  symmetrize(m);
  for (std::uint32_t i = 0; i < m.n; ++i) m.at(i, i) = 0.0;
  return WeightMatrix(m.n, std::move(m.m));
}

}  // namespace

void TrainingSet::validate() const {
  if (patterns.empty()) throw InputError("training set is empty");
  if (ids.size() != patterns.size()) {
    throw InputError("ids count " + std::to_string(ids.size()) + " does not match pattern count " +
                     std::to_string(patterns.size()));
  }
  const std::size_t len = patterns.front().size();
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    if (patterns[p].size() != len) {
      throw DimensionError("pattern " + std::to_string(p) + " has length " +
                           std::to_string(patterns[p].size()) + ", expected " +
                           std::to_string(len));
    }
  }
  std::set<std::string> seen;
  for (const std::string& id : ids) {
    if (!seen.insert(id).second) throw InputError("duplicate pattern id '" + id + "'");
  }
}

SquareMatrix SquareMatrix::zero(std::uint32_t n) {
  return SquareMatrix{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
}

LearningRule parse_rule(const std::string& name) {
  if (name == "paper") return LearningRule::PseudoinverseHebbian;
  if (name == "projection") return LearningRule::Projection;
  if (name == "hebbian") return LearningRule::Hebbian;
  throw ParameterError("unknown rule '" + name + "', expected paper|projection|hebbian");
}

std::string rule_name(LearningRule rule) {
  switch (rule) {
    case LearningRule::PseudoinverseHebbian: return "paper";
    case LearningRule::Projection: return "projection";
    case LearningRule::Hebbian: return "hebbian";
  }
  throw ParameterError("unknown rule value");
}

WeightMatrix hebbian_weights(const TrainingSet& ts) {
  ts.validate();
  const std::uint32_t n = static_cast<std::uint32_t>(ts.n());
  SquareMatrix w = SquareMatrix::zero(n);
  // Accumulate the upper triangle, mirror afterwards. Entries are exact
  // small integers, so the mirrored halves are bit-identical.
  for (const BipolarState& pattern : ts.patterns) {
    for (std::uint32_t i = 0; i < n; ++i) {
      const double si = pattern[i];
      for (std::uint32_t j = i + 1; j < n; ++j) {
        w.at(i, j) += si * pattern[j];
      }
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      w.at(j, i) = w.at(i, j);
    }
  }
  return WeightMatrix(n, std::move(w.m));
}

SquareMatrix zero_diagonal(SquareMatrix m) {
  if (m.m.size() != static_cast<std::size_t>(m.n) * m.n) {
    throw DimensionError("matrix data length " + std::to_string(m.m.size()) + " for n = " +
                         std::to_string(m.n));
  }
  for (std::uint32_t i = 0; i < m.n; ++i) m.at(i, i) = 0.0;
  return m;
}

SquareMatrix moore_penrose_pinv(const SquareMatrix& m, double rtol) {
  if (m.m.size() != static_cast<std::size_t>(m.n) * m.n) {
    throw DimensionError("matrix data length " + std::to_string(m.m.size()) + " for n = " +
                         std::to_string(m.n));
  }
  if (!(rtol > 0.0)) throw ParameterError("rtol must be positive");
  for (double v : m.m) {
    if (!std::isfinite(v)) throw InputError("non-finite matrix entry");
  }

  const Eigen::Map<const EigenRowMajor> a(m.m.data(), m.n, m.n);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();

  const double cutoff = rtol * (sigma.size() > 0 ? sigma(0) : 0.0);
  Eigen::VectorXd inverted = Eigen::VectorXd::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) inverted(i) = 1.0 / sigma(i);
  }

  SquareMatrix out = SquareMatrix::zero(m.n);
  Eigen::Map<EigenRowMajor> result(out.m.data(), m.n, m.n);
  result = svd.matrixV() * inverted.asDiagonal() * svd.matrixU().transpose();
  return out;
}

WeightMatrix pseudoinverse_rule_weights(const TrainingSet& ts, double rtol) {
  ts.validate();
  if (ts.size() > ts.n()) {
    throw CapacityError("cannot store " + std::to_string(ts.size()) + " patterns in " +
                        std::to_string(ts.n()) + " nodes");
  }
  WeightMatrix hebbian = hebbian_weights(ts);  // diagonal already zero
  const bool all_zero = std::all_of(hebbian.data().begin(), hebbian.data().end(),
                                    [](double v) { return v == 0.0; });
  if (all_zero) {
    throw TrainingError("Hebbian matrix is identically zero; patterns cancel");
  }
  SquareMatrix dense{hebbian.n(), hebbian.data()};
  return promote(moore_penrose_pinv(dense, rtol));
}

SquareMatrix projection_matrix(const TrainingSet& ts) {
  ts.validate();
  const std::uint32_t n = static_cast<std::uint32_t>(ts.n());
  const std::uint32_t p = static_cast<std::uint32_t>(ts.size());
  if (p > n) {
    throw CapacityError("cannot store " + std::to_string(p) + " patterns in " +
                        std::to_string(n) + " nodes");
  }

  Eigen::MatrixXd x(n, p);
  for (std::uint32_t c = 0; c < p; ++c) {
    for (std::uint32_t r = 0; r < n; ++r) x(r, c) = ts.patterns[c][r];
  }

  const Eigen::MatrixXd gram = x.transpose() * x;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  if (!lu.isInvertible()) {
    throw TrainingError("patterns are linearly dependent; projection rule needs full rank");
  }

  SquareMatrix out = SquareMatrix::zero(n);
  Eigen::Map<EigenRowMajor> result(out.m.data(), n, n);
  result = x * lu.solve(x.transpose());
  return out;
}

WeightMatrix projection_rule_weights(const TrainingSet& ts) {
  return promote(projection_matrix(ts));
}

std::vector<std::vector<std::uint32_t>> partition_indices(std::size_t count, std::uint32_t k,
                                                          std::uint64_t seed) {
  if (k == 0) throw ParameterError("need at least one network");
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(derive_seed(seed, kPartitionStream));
  rng.shuffle(order);

  // First (count % k) networks take one extra pattern; sizes differ by <= 1.
  std::vector<std::vector<std::uint32_t>> sets(k);
  const std::size_t base = count / k;
  const std::size_t extra = count % k;
  std::size_t cursor = 0;
  for (std::uint32_t s = 0; s < k; ++s) {
    const std::size_t take = base + (s < extra ? 1 : 0);
    sets[s].assign(order.begin() + cursor, order.begin() + cursor + take);
    cursor += take;
  }
  return sets;
}

NetworkBank train_bank(const TrainingSet& ts, BankGeometry geometry, std::uint32_t k,
                       LearningRule rule, std::uint64_t seed) {
  ts.validate();
  if (k == 0) throw ParameterError("need at least one network");
  const std::uint32_t n = static_cast<std::uint32_t>(ts.n());
  if (geometry.n() != n) {
    throw DimensionError("geometry " + std::to_string(geometry.rows) + "x" +
                         std::to_string(geometry.cols) + " does not match pattern length " +
                         std::to_string(n));
  }
  const std::size_t heaviest = (ts.size() + k - 1) / k;
  if (heaviest > n) {
    throw CapacityError("per-network load " + std::to_string(heaviest) + " exceeds " +
                        std::to_string(n) + " nodes");
  }

  const auto sets = partition_indices(ts.size(), k, seed);

  std::map<std::string, std::uint32_t> assignment;
  for (std::uint32_t s = 0; s < k; ++s) {
    for (std::uint32_t p : sets[s]) assignment[ts.ids[p]] = s;
  }

  std::vector<WeightMatrix> networks(k, WeightMatrix(n));
  detail::parallel_for(k, [&](std::size_t s) {
    TrainingSet subset;
    subset.patterns.reserve(sets[s].size());
    subset.ids.reserve(sets[s].size());
    for (std::uint32_t p : sets[s]) {
      subset.patterns.push_back(ts.patterns[p]);
      subset.ids.push_back(ts.ids[p]);
    }
    if (subset.patterns.empty()) return;  // more networks than patterns; keep zero weights
    switch (rule) {
      case LearningRule::PseudoinverseHebbian:
        networks[s] = pseudoinverse_rule_weights(subset);
        break;
      case LearningRule::Projection:
        networks[s] = projection_rule_weights(subset);
        break;
      case LearningRule::Hebbian:
        networks[s] = hebbian_weights(subset);
        break;
    }
  });

  return NetworkBank(geometry, std::move(networks), std::move(assignment));
}

}  // namespace hopbank
