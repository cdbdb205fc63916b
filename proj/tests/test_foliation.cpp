#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "mafol/foliation.hpp"
#include "oracles.hpp"

using namespace mafol;
using oracle::pt;

namespace {

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) v[i] = a + (b - a) * i / (count - 1);
  return v;
}

LeafTraceConfig config(double h) {
  LeafTraceConfig cfg;
  cfg.integrator.step = h;
  return cfg;
}

}  // namespace

TEST_CASE("trace_leaf: ball leaf is a punctured complex line") {
  const auto ts = linspace(0, 2, 5);
  const auto ss = linspace(0, 2 * std::numbers::pi, 9);
  const CPoint base = pt({1.0, 0.0});
  const auto tr = trace_leaf(oracle::ball(2), base, ts, ss, config(1e-3));
  CHECK_FALSE(tr.truncated);
  // f(t + i s) = e^{(t + i s)/2} base
  for (std::size_t j = 0; j < ss.size(); ++j) {
    for (std::size_t i = 0; i < ts.size(); ++i) {
      const auto& node = tr.node(i, j);
      REQUIRE(node.has_value());
      const Complex expect = std::exp(Complex(ts[i], ss[j]) / 2.0);
      CHECK(std::abs(node->point[0] - expect) < 1e-9);
      CHECK(std::abs(node->point[1]) < 1e-15);
    }
  }
  CHECK(leaf_log_linearity(tr) < 1e-10);
  CHECK(level_set_invariance(tr) < 1e-10);
  CHECK(leaf_stratum_invariance(tr, kDefaultTolRank).pass);
}

TEST_CASE("trace_leaf: flow laws on both MA examples") {
  const auto ts = linspace(0, 2, 11);
  const auto ss = linspace(0, 2 * std::numbers::pi, 17);
  for (const auto& [p, z0] : {std::pair{oracle::ball(2), pt({0.6, {0.2, 0.4}})},
                              std::pair{oracle::weighted(), pt({0.5, {-0.3, 0.6}})},
                              std::pair{oracle::weighted(), pt({0.8, 0.0})}}) {
    const auto tr = trace_leaf(p, z0, ts, ss, config(1e-3));
    CHECK_FALSE(tr.truncated);
    CHECK(leaf_log_linearity(tr) < 1e-6);
    CHECK(level_set_invariance(tr) < 1e-6);
    const auto inv = leaf_stratum_invariance(tr, kDefaultTolRank);
    CHECK(inv.pass);
    CHECK(inv.violations.empty());
  }
}

TEST_CASE("trace_leaf: degenerate leaf stays in P_n-1") {
  const auto tr = trace_leaf(oracle::weighted(), pt({1.0, 0.0}), linspace(-1, 1, 5),
                             linspace(0, 6, 7), config(1e-3));
  CHECK(tr.base_stratum == Stratum::LowDegeneracy);
  const auto inv = leaf_stratum_invariance(tr, kDefaultTolRank);
  CHECK(inv.pass);
  for (const auto& node : tr.nodes) {
    REQUIRE(node.has_value());
    CHECK(std::abs(node->det_h) < 1e-12);
  }
}

TEST_CASE("trace_leaf: non-MA potential fails the flow laws") {
  const auto tr = trace_leaf(oracle::bad(), pt({1.0, 1.0}), linspace(0, 1, 5),
                             linspace(0, 3, 4), config(1e-3));
  CHECK(leaf_log_linearity(tr) > 1e-2);
}

TEST_CASE("trace_leaf: invalid base and grids") {
  CHECK_THROWS_AS(trace_leaf(oracle::ball(2), pt({0.0, 0.0}), std::vector<double>{0.0},
                             std::vector<double>{0.0}),
                  DomainError);
  CHECK_THROWS_AS(trace_leaf(oracle::ball(2), pt({1.0}), std::vector<double>{0.0},
                             std::vector<double>{0.0}),
                  DimensionError);
}

TEST_CASE("trace_leaf: flowing toward the origin truncates") {
  // log rho falls by t; at t = -40 rho ~ 4e-18 < rho_floor
  const auto tr = trace_leaf(oracle::ball(2), pt({1.0, 0.0}), std::vector<double>{0.0, -40.0},
                             std::vector<double>{0.0}, config(1e-2));
  CHECK(tr.truncated);
  CHECK(tr.node(0, 0).has_value());
  CHECK_FALSE(tr.node(1, 0).has_value());
}

TEST_CASE("property: RK4 error falls by at least 8x when the step halves") {
  const CPoint base = pt({0.7, {0.1, 0.3}});
  const std::vector<double> ts{2.0};
  const std::vector<double> ss{0.0};
  const Complex exact = std::exp(1.0) * base[0];  // e^{t/2} scaling
  auto err = [&](double h) {
    const auto tr = trace_leaf(oracle::ball(2), base, ts, ss, config(h), Execution::Serial);
    return std::abs(tr.node(0, 0)->point[0] - exact);
  };
  const double e1 = err(0.1);
  const double e2 = err(0.05);
  CHECK(e1 > 0.0);
  CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("property: flow composition") {
  const GradientKernel k(oracle::weighted());
  const auto x = k.velocity_field(RealFieldKind::X);
  const CPoint z0 = pt({0.4, {0.5, -0.2}});
  const CPoint once = integrate(x, z0, 1.0, 1e-3);
  const CPoint twice = integrate(x, integrate(x, z0, 0.4, 1e-3), 0.6, 1e-3);
  CHECK((once - twice).norm() < 1e-10);
  const CPoint back = integrate(x, once, -1.0, 1e-3);
  CHECK((back - z0).norm() < 1e-10);
}

TEST_CASE("property: serial and parallel traces are identical") {
  const auto ts = linspace(-1, 1, 7);
  const auto ss = linspace(0, 6, 9);
  const auto a = trace_leaf(oracle::weighted(), pt({0.5, 0.5}), ts, ss, config(1e-2), Execution::Serial);
  const auto b = trace_leaf(oracle::weighted(), pt({0.5, 0.5}), ts, ss, config(1e-2), Execution::Parallel);
  std::ostringstream sa, sb;
  write_trace_csv(sa, a);
  write_trace_csv(sb, b);
  CHECK(sa.str() == sb.str());
}

TEST_CASE("write_trace_csv: header and rows") {
  const auto tr = trace_leaf(oracle::ball(2), pt({1.0, 0.0}), std::vector<double>{0.0, 1.0},
                             std::vector<double>{0.0}, config(1e-2));
  std::ostringstream os;
  write_trace_csv(os, tr);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  CHECK(header == "t,s,re_z1,im_z1,re_z2,im_z2,rho,abs_detH,stratum");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 2);
}
