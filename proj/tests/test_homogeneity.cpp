#include <doctest.h>

#include <random>

#include "mafol/homogeneity.hpp"
#include "mafol/scan.hpp"
#include "oracles.hpp"

using namespace mafol;
using oracle::pt;

TEST_CASE("find_weights: examples") {
  const auto w = find_weights(oracle::weighted());
  REQUIRE(w.status == WeightStatus::Found);
  REQUIRE(w.weights.has_value());
  CHECK(std::abs((*w.weights)[0] - 1.0) < 1e-12);
  CHECK(std::abs((*w.weights)[1] - 0.5) < 1e-12);
  CHECK(w.unique);

  const auto b = find_weights(oracle::ball(3));
  REQUIRE(b.status == WeightStatus::Found);
  for (int j = 0; j < 3; ++j) CHECK(std::abs((*b.weights)[j] - 1.0) < 1e-12);

  const auto sq = find_weights(oracle::ball_squared());
  REQUIRE(sq.status == WeightStatus::Found);
  CHECK(std::abs((*sq.weights)[0] - 0.5) < 1e-12);
  CHECK(std::abs((*sq.weights)[1] - 0.5) < 1e-12);
}

TEST_CASE("find_weights: infeasible with minimal inconsistent subset") {
  const auto w = find_weights(oracle::bad());
  CHECK(w.status == WeightStatus::Infeasible);
  CHECK_FALSE(w.weights.has_value());
  CHECK(w.residual > 1e-9);
  REQUIRE(w.inconsistent.size() == 3);
  CHECK(w.inconsistent[0].to_string() == "c1=1");
  CHECK(w.inconsistent[1].to_string() == "c2=1");
  CHECK(w.inconsistent[2].to_string() == "c1+c2=1");

  const auto mixed = find_weights(oracle::mixed_quartic());
  CHECK(mixed.status == WeightStatus::Infeasible);
  CHECK_FALSE(mixed.inconsistent.empty());
}

TEST_CASE("find_weights: not positive and non-unique") {
  // |z1|^2 (1 + |z2|^2): c1 = 1 and c1 + c2 = 1 force c2 = 0
  const auto np = find_weights(oracle::parse("n=2; a=[1,0] b=[1,0] c=1; a=[1,1] b=[1,1] c=1"));
  CHECK(np.status == WeightStatus::NotPositive);
  CHECK_FALSE(np.weights.has_value());
  CHECK(std::abs(np.raw[1]) < 1e-12);

  // |z1 z2|^2: c1 + c2 = 1 only
  const auto nu = find_weights(oracle::parse("n=2; a=[1,1] b=[1,1] c=1"));
  CHECK(nu.status == WeightStatus::Found);
  CHECK_FALSE(nu.unique);
  CHECK(nu.rank == 1);
  CHECK(std::abs((*nu.weights)[0] - 0.5) < 1e-12);

  // z1 only appears holomorphically with a constant partner
  const auto cst = find_weights(oracle::parse("n=1; a=[0] b=[0] c=1; a=[1] b=[1] c=1"));
  CHECK(cst.status == WeightStatus::Infeasible);
  REQUIRE(cst.inconsistent.size() == 1);
  CHECK(cst.inconsistent[0].to_string() == "0=1");
}

TEST_CASE("WeightEquation::to_string") {
  CHECK(WeightEquation{{1, 2}}.to_string() == "c1+2c2=1");
  CHECK(WeightEquation{{0, 3, 1}}.to_string() == "3c2+c3=1");
  CHECK(WeightEquation{{0, 0}}.to_string() == "0=1");
}

TEST_CASE("WeightVector rejects non-positive entries") {
  RVector v(2);
  v << 1.0, 0.0;
  CHECK_THROWS_AS(WeightVector{v}, Error);
  v << 1.0, 0.5;
  CHECK(WeightVector{v}[1] == 0.5);
}

TEST_CASE("verify_weights and linear_field_agreement") {
  std::mt19937_64 rng(41);
  const auto p = oracle::weighted();
  std::vector<CPoint> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(oracle::random_point_in_shell(rng, p, 0.05, 10.0, 2.0));
  pts.push_back(pt({1.0, 0.0}));
  RVector c(2);
  c << 1.0, 0.5;
  const WeightVector wv(c);
  const auto lambdas = default_lambdas();
  CHECK(verify_weights(p, wv, pts, lambdas) < 1e-12);
  CHECK(linear_field_agreement(p, wv, pts, Execution::Serial) < 1e-8);
  CHECK(linear_field_agreement(p, wv, pts, Execution::Parallel) ==
        linear_field_agreement(p, wv, pts, Execution::Serial));

  c << 0.5, 0.5;
  CHECK(verify_weights(p, WeightVector(c), pts, lambdas) > 1e-2);
}

TEST_CASE("verify_weights: purely imaginary scalings detect z/zbar asymmetry") {
  // rho = |z1|^2 + Re(z1^2): weights c1 = 1 fit the z-side degrees of the
  // (1,1) term but not the phase of the (2,0) term
  const auto p = oracle::parse("n=1; a=[1] b=[1] c=3; a=[2] b=[0] c=1; a=[0] b=[2] c=1");
  RVector c(1);
  c << 1.0;
  const std::vector<CPoint> pts{pt({{0.3, 0.4}})};
  CHECK(verify_weights(p, WeightVector(c), pts, default_lambdas()) > 1e-2);
  CHECK(find_weights(p).status == WeightStatus::Infeasible);
}

TEST_CASE("flow_level_map_check: MA examples map level 1 to level 2") {
  for (const auto& p : {oracle::ball(2), oracle::weighted()}) {
    const auto bnd = level_set_samples(p, 1.0, 50, 7);
    CHECK(flow_level_map_check(p, 1.0, 2.0, bnd) < 1e-5);
  }
  const auto bnd = level_set_samples(oracle::bad(), 1.0, 20, 7);
  CHECK(flow_level_map_check(oracle::bad(), 1.0, 2.0, bnd) > 1e-3);
  CHECK_THROWS_AS(flow_level_map_check(oracle::ball(2), 1.0, 2.0, std::vector<CPoint>{pt({2.0, 0.0})}), Error);
}

TEST_CASE("property: random weighted-homogeneous potentials recover their weights") {
  std::mt19937_64 rng(42);
  // rho = sum_j |z_j|^{2 m_j} has weights 1/m_j
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> m(1, 4);
    const int a = m(rng), b = m(rng), c = m(rng);
    const auto p = oracle::parse("n=3; a=[" + std::to_string(a) + ",0,0] b=[" + std::to_string(a) +
                                 ",0,0] c=2; a=[0," + std::to_string(b) + ",0] b=[0," + std::to_string(b) +
                                 ",0] c=1; a=[0,0," + std::to_string(c) + "] b=[0,0," + std::to_string(c) +
                                 "] c=0.5");
    const auto w = find_weights(p);
    REQUIRE(w.status == WeightStatus::Found);
    CHECK(std::abs((*w.weights)[0] - 1.0 / a) < 1e-12);
    CHECK(std::abs((*w.weights)[1] - 1.0 / b) < 1e-12);
    CHECK(std::abs((*w.weights)[2] - 1.0 / c) < 1e-12);
    std::vector<CPoint> pts;
    for (int i = 0; i < 20; ++i) pts.push_back(oracle::random_point(rng, 3, 1.0));
    CHECK(verify_weights(p, *w.weights, pts, default_lambdas()) < 1e-11);
  }
}
