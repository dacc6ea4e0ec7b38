#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "hopbank/dynamics.hpp"
#include "hopbank/errors.hpp"
#include "hopbank/rng.hpp"
#include "hopbank/training.hpp"

using namespace hopbank;

namespace {

BipolarState random_state(std::size_t n, Rng& rng) {
  std::vector<std::int8_t> v(n);
  for (auto& x : v) x = rng.uniform01() < 0.5 ? 1 : -1;
  return BipolarState(std::move(v));
}

TrainingSet random_set(std::size_t n, std::size_t p, std::uint64_t seed) {
  Rng rng(seed);
  TrainingSet ts;
  for (std::size_t i = 0; i < p; ++i) {
    ts.patterns.push_back(random_state(n, rng));
    ts.ids.push_back("p" + std::to_string(i));
  }
  return ts;
}

// Independent brute-force Hebbian oracle: plain double loop over
// sum_p xi[i] * xi[j].
double hebbian_oracle(const TrainingSet& ts, std::uint32_t i, std::uint32_t j) {
  if (i == j) return 0.0;
  double acc = 0.0;
  for (const BipolarState& xi : ts.patterns) acc += double(xi[i]) * double(xi[j]);
  return acc;
}

double frobenius(const SquareMatrix& m) {
  double acc = 0.0;
  for (double v : m.m) acc += v * v;
  return std::sqrt(acc);
}

// Hand-rolled multiply so the Moore-Penrose checks do not share code with
// the implementation under test.
SquareMatrix mul(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix out = SquareMatrix::zero(a.n);
  for (std::uint32_t i = 0; i < a.n; ++i) {
    for (std::uint32_t k = 0; k < a.n; ++k) {
      const double aik = a.at(i, k);
      if (aik == 0.0) continue;
      for (std::uint32_t j = 0; j < a.n; ++j) {
        out.at(i, j) += aik * b.at(k, j);
      }
    }
  }
  return out;
}

SquareMatrix sub(const SquareMatrix& a, const SquareMatrix& b) {
  SquareMatrix out = a;
  for (std::size_t i = 0; i < out.m.size(); ++i) out.m[i] -= b.m[i];
  return out;
}

SquareMatrix transpose(const SquareMatrix& a) {
  SquareMatrix out = SquareMatrix::zero(a.n);
  for (std::uint32_t i = 0; i < a.n; ++i) {
    for (std::uint32_t j = 0; j < a.n; ++j) out.at(j, i) = a.at(i, j);
  }
  return out;
}

void check_moore_penrose(const SquareMatrix& m, const SquareMatrix& pinv, double tol) {
  const double scale_m = std::max(frobenius(m), 1e-300);
  const double scale_p = std::max(frobenius(pinv), 1e-300);
  CHECK(frobenius(sub(mul(mul(m, pinv), m), m)) <= tol * scale_m);
  CHECK(frobenius(sub(mul(mul(pinv, m), pinv), pinv)) <= tol * scale_p);
  const SquareMatrix mp = mul(m, pinv);
  const SquareMatrix pm = mul(pinv, m);
  CHECK(frobenius(sub(mp, transpose(mp))) <= tol * std::max(frobenius(mp), 1e-300));
  CHECK(frobenius(sub(pm, transpose(pm))) <= tol * std::max(frobenius(pm), 1e-300));
}

}  // namespace

TEST_SUITE_BEGIN("training");

TEST_CASE("hebbian outer products") {
  TrainingSet one;
  one.patterns.push_back(BipolarState({1, -1}));
  one.ids.push_back("a");
  const WeightMatrix w = hebbian_weights(one);
  CHECK(w(0, 0) == 0.0);
  CHECK(w(1, 1) == 0.0);
  CHECK(w(0, 1) == -1.0);
  CHECK(w(1, 0) == -1.0);

  TrainingSet two;
  two.patterns.push_back(BipolarState({1, 1}));
  two.patterns.push_back(BipolarState({-1, -1}));
  two.ids = {"a", "b"};
  const WeightMatrix w2 = hebbian_weights(two);
  CHECK(w2(0, 1) == 2.0);
  CHECK(w2(1, 0) == 2.0);
}

TEST_CASE("hebbian matches the double-loop oracle") {
  const TrainingSet ts = random_set(25, 10, 42);
  const WeightMatrix w = hebbian_weights(ts);
  for (std::uint32_t i = 0; i < 25; ++i) {
    for (std::uint32_t j = 0; j < 25; ++j) {
      CHECK(w(i, j) == hebbian_oracle(ts, i, j));
    }
  }
}

TEST_CASE("hebbian input validation") {
  CHECK_THROWS_AS(hebbian_weights(TrainingSet{}), InputError);

  TrainingSet ragged;
  ragged.patterns.push_back(BipolarState({1, -1}));
  ragged.patterns.push_back(BipolarState({1, -1, 1}));
  ragged.ids = {"a", "b"};
  CHECK_THROWS_AS(hebbian_weights(ragged), DimensionError);

  TrainingSet dup;
  dup.patterns.push_back(BipolarState({1, -1}));
  dup.patterns.push_back(BipolarState({1, 1}));
  dup.ids = {"a", "a"};
  CHECK_THROWS_AS(hebbian_weights(dup), InputError);
}

TEST_CASE("zero_diagonal") {
  SquareMatrix m{2, {5, 1, 2, 7}};
  const SquareMatrix z = zero_diagonal(m);
  CHECK(z.m == std::vector<double>{0, 1, 2, 0});

  SquareMatrix zeros = SquareMatrix::zero(3);
  CHECK(zero_diagonal(zeros).m == SquareMatrix::zero(3).m);

  // idempotent
  Rng rng(3);
  SquareMatrix r = SquareMatrix::zero(6);
  for (auto& v : r.m) v = rng.normal();
  const SquareMatrix once = zero_diagonal(r);
  CHECK(zero_diagonal(once).m == once.m);

  CHECK_THROWS_AS(zero_diagonal(SquareMatrix{2, {1, 2, 3}}), DimensionError);
}

TEST_CASE("pinv of identity and diagonal") {
  SquareMatrix eye = SquareMatrix::zero(4);
  for (std::uint32_t i = 0; i < 4; ++i) eye.at(i, i) = 1.0;
  const SquareMatrix pinv_eye = moore_penrose_pinv(eye);
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < 4; ++j) {
      CHECK(pinv_eye.at(i, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  }

  SquareMatrix diag{2, {2, 0, 0, 0}};
  const SquareMatrix pinv_diag = moore_penrose_pinv(diag);
  CHECK(pinv_diag.at(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pinv_diag.at(0, 1) == doctest::Approx(0.0));
  CHECK(pinv_diag.at(1, 0) == doctest::Approx(0.0));
  CHECK(pinv_diag.at(1, 1) == doctest::Approx(0.0));
}

TEST_CASE("pinv satisfies the Moore-Penrose conditions") {
  Rng rng(11);
  SquareMatrix m = SquareMatrix::zero(50);
  for (std::uint32_t i = 0; i < 50; ++i) {
    for (std::uint32_t j = i; j < 50; ++j) {
      const double v = rng.normal();
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  const SquareMatrix pinv = moore_penrose_pinv(m);
  check_moore_penrose(m, pinv, 1e-8);

  // symmetric input gives a symmetric pseudo-inverse
  for (std::uint32_t i = 0; i < 50; ++i) {
    for (std::uint32_t j = 0; j < 50; ++j) {
      CHECK(std::fabs(pinv.at(i, j) - pinv.at(j, i)) <=
            1e-9 * std::max(1.0, std::fabs(pinv.at(i, j))));
    }
  }
}

TEST_CASE("pinv rejects bad input") {
  SquareMatrix m{2, {1, 2, 3, std::nan("")}};
  CHECK_THROWS_AS(moore_penrose_pinv(m), InputError);
  CHECK_THROWS_AS(moore_penrose_pinv(SquareMatrix{2, {1, 2, 3, 4}}, 0.0), ParameterError);
  CHECK_THROWS_AS(moore_penrose_pinv(SquareMatrix{2, {1, 2, 3}}), DimensionError);
}

TEST_CASE("pseudoinverse rule composition and invariants") {
  const TrainingSet ts = random_set(30, 6, 5);
  const WeightMatrix w = pseudoinverse_rule_weights(ts);

  // matches the stated three-step composition
  const WeightMatrix hebb = hebbian_weights(ts);
  const SquareMatrix composed =
      zero_diagonal(moore_penrose_pinv(SquareMatrix{hebb.n(), hebb.data()}));
  for (std::uint32_t i = 0; i < w.n(); ++i) {
    for (std::uint32_t j = 0; j < w.n(); ++j) {
      CHECK(w(i, j) == doctest::Approx(composed.at(i, j)).epsilon(1e-11));
    }
  }

  // symmetry is exact, diagonal exactly zero
  for (std::uint32_t i = 0; i < w.n(); ++i) {
    CHECK(w(i, i) == 0.0);
    for (std::uint32_t j = 0; j < w.n(); ++j) {
      CHECK(w(i, j) == w(j, i));
    }
  }
}

TEST_CASE("pseudoinverse rule stores orthogonal patterns as fixed points") {
  TrainingSet ts;
  ts.patterns.push_back(BipolarState({1, 1, 1, 1}));
  ts.patterns.push_back(BipolarState({1, -1, 1, -1}));
  ts.ids = {"a", "b"};
  const WeightMatrix w = pseudoinverse_rule_weights(ts);
  for (const BipolarState& pattern : ts.patterns) {
    const RunResult run = run_to_convergence(w, pattern, 400, 9);
    CHECK(run.stats.flips == 0);
    CHECK(run.state == pattern);
    CHECK(run.stats.converged);
  }
}

TEST_CASE("pseudoinverse rule error paths") {
  // more patterns than nodes
  CHECK_THROWS_AS(pseudoinverse_rule_weights(random_set(4, 5, 1)), CapacityError);

  // cancelling patterns wipe the Hebbian matrix
  TrainingSet cancel;
  cancel.patterns.push_back(BipolarState({1, 1}));
  cancel.patterns.push_back(BipolarState({1, -1}));
  cancel.ids = {"a", "b"};
  CHECK_THROWS_AS(pseudoinverse_rule_weights(cancel), TrainingError);
}

TEST_CASE("projection rule on one pattern") {
  TrainingSet ts;
  ts.patterns.push_back(BipolarState({1, -1, 1}));
  ts.ids = {"a"};
  const WeightMatrix w = projection_rule_weights(ts);
  // X (X^T X)^-1 X^T with one column is xi xi^T / n
  for (std::uint32_t i = 0; i < 3; ++i) {
    for (std::uint32_t j = 0; j < 3; ++j) {
      const double expected = i == j ? 0.0 : double(ts.patterns[0][i]) * ts.patterns[0][j] / 3.0;
      CHECK(w(i, j) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection rule equals scaled hebbian on orthogonal patterns") {
  TrainingSet ts;
  ts.patterns.push_back(BipolarState({1, 1, 1, 1}));
  ts.patterns.push_back(BipolarState({1, -1, 1, -1}));
  ts.ids = {"a", "b"};
  const WeightMatrix proj = projection_rule_weights(ts);
  const WeightMatrix hebb = hebbian_weights(ts);
  for (std::uint32_t i = 0; i < 4; ++i) {
    for (std::uint32_t j = 0; j < 4; ++j) {
      CHECK(proj(i, j) == doctest::Approx(hebb(i, j) / 4.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("projection matrix fixes stored patterns before diagonal zeroing") {
  const TrainingSet ts = random_set(441, 30, 17);
  const SquareMatrix p = projection_matrix(ts);
  for (const BipolarState& xi : ts.patterns) {
    for (std::uint32_t i = 0; i < p.n; ++i) {
      double acc = 0.0;
      for (std::uint32_t j = 0; j < p.n; ++j) acc += p.at(i, j) * xi[j];
      CHECK(acc == doctest::Approx(double(xi[i])).epsilon(1e-8));
    }
  }
}

TEST_CASE("projection rule rejects dependent patterns") {
  TrainingSet ts;
  ts.patterns.push_back(BipolarState({1, -1, 1}));
  ts.patterns.push_back(BipolarState({1, -1, 1}));  // duplicate pattern, distinct id
  ts.ids = {"a", "b"};
  CHECK_THROWS_AS(projection_rule_weights(ts), TrainingError);
}

TEST_CASE("partition sizes and disjointness") {
  const auto sets = partition_indices(7, 3, 99);
  REQUIRE(sets.size() == 3);
  CHECK(sets[0].size() == 3);
  CHECK(sets[1].size() == 2);
  CHECK(sets[2].size() == 2);
  std::set<std::uint32_t> all;
  for (const auto& s : sets) {
    for (std::uint32_t idx : s) CHECK(all.insert(idx).second);
  }
  CHECK(all.size() == 7);

  const auto big = partition_indices(4000, 10, 1);
  for (const auto& s : big) CHECK(s.size() == 400);
}

TEST_CASE("partition determinism") {
  CHECK(partition_indices(100, 4, 7) == partition_indices(100, 4, 7));
  CHECK(partition_indices(100, 4, 7) != partition_indices(100, 4, 8));
}

TEST_CASE("train_bank assembles a bank") {
  const TrainingSet ts = random_set(25, 12, 33);
  const NetworkBank bank = train_bank(ts, BankGeometry{5, 5}, 3, LearningRule::Hebbian, 4);
  CHECK(bank.k() == 3);
  CHECK(bank.n() == 25);
  CHECK(bank.assignment().size() == 12);

  std::vector<int> load(3, 0);
  for (const auto& [id, index] : bank.assignment()) ++load[index];
  CHECK(load == std::vector<int>{4, 4, 4});

  // same seed, same bank; the partition moves with the seed
  const NetworkBank again = train_bank(ts, BankGeometry{5, 5}, 3, LearningRule::Hebbian, 4);
  CHECK(bank == again);
}

TEST_CASE("train_bank rejects overload") {
  const TrainingSet ts = random_set(4, 5, 2);
  CHECK_THROWS_AS(train_bank(ts, BankGeometry{2, 2}, 1, LearningRule::Hebbian, 0),
                  CapacityError);
  CHECK_THROWS_AS(train_bank(ts, BankGeometry{2, 2}, 0, LearningRule::Hebbian, 0),
                  ParameterError);
  CHECK_THROWS_AS(train_bank(ts, BankGeometry{3, 2}, 2, LearningRule::Hebbian, 0),
                  DimensionError);
}

TEST_CASE("rule names round-trip") {
  CHECK(parse_rule("paper") == LearningRule::PseudoinverseHebbian);
  CHECK(parse_rule("projection") == LearningRule::Projection);
  CHECK(parse_rule("hebbian") == LearningRule::Hebbian);
  CHECK(rule_name(parse_rule("paper")) == "paper");
  CHECK_THROWS_AS(parse_rule("magic"), ParameterError);
}

TEST_SUITE_END();
