#include <doctest.h>

#include <random>

#include "mafol/gradient.hpp"
#include "mafol/scan.hpp"
#include "oracles.hpp"

using namespace mafol;
using oracle::pt;

namespace {

/// Z solving H^T Z = conj(g) with FD oracle derivatives and a plain solve.
CVector oracle_z(const PolyPotential& p, const CPoint& z) {
  const int n = p.dim();
  CVector g(n);
  for (int mu = 0; mu < n; ++mu) g[mu] = oracle::fd_dz(p, z, mu, 1e-5);
  const CMatrix h = oracle::fd_levi(p, z, 1e-4);
  return h.transpose().fullPivLu().solve(g.conjugate());
}

}  // namespace

TEST_CASE("complex_gradient: examples") {
  const auto ball = complex_gradient(oracle::ball(2), pt({1.0, {0, 1}}));
  CHECK((ball.field - pt({1.0, {0, 1}})).norm() < 1e-14);
  CHECK(ball.method == GradientMethod::DirectSolve);

  const auto w = complex_gradient(oracle::weighted(), pt({1.0, 1.0}));
  CHECK((w.field - pt({1.0, 0.5})).norm() < 1e-14);
  CHECK(w.euler_residual < 1e-14);

  const auto bad = complex_gradient(oracle::bad(), pt({1.0, 1.0}));
  CHECK((bad.field - pt({2.0 / 3, 2.0 / 3})).norm() < 1e-14);
  CHECK(bad.euler_residual == doctest::Approx(1.0 / 3).epsilon(1e-12));

  const auto sq = complex_gradient(oracle::ball_squared(), pt({1.0, 1.0}));
  CHECK((sq.field - pt({0.5, 0.5})).norm() < 1e-14);

  CHECK_THROWS_AS(complex_gradient(oracle::weighted(), pt({1.0, 0.0})), SingularHessianError);
  CHECK_THROWS_AS(complex_gradient(oracle::ball(2), pt({0.0, 0.0})), DomainError);
}

TEST_CASE("extended_gradient: degenerate points") {
  const auto w = extended_gradient(oracle::weighted(), pt({1.0, 0.0}));
  CHECK((w.field - pt({1.0, 0.0})).norm() < 1e-8);
  CHECK(w.method == GradientMethod::LeastSquaresExtension);
  CHECK(w.consistent);
  CHECK(w.euler_residual < 1e-12);

  const auto direct = extended_gradient(oracle::weighted(), pt({1.0, 1.0}));
  CHECK(direct.method == GradientMethod::DirectSolve);

  // |z1|^2 + |z2|^4 + |z1|^2|z2|^4 degenerates on z2 = 0 but is not weighted
  // homogeneous; at (1, 0) the system is still consistent.
  const auto q = oracle::parse("n=2; a=[1,0] b=[1,0] c=1; a=[0,2] b=[0,2] c=1; a=[1,2] b=[1,2] c=1");
  CHECK(extended_gradient(q, pt({1.0, 0.0})).consistent);

  // rho = 1 + |z1|^2 at z1 = 0 has H = [1], g = 0, Z = 0 but Z(rho) = 0 != rho
  const auto shifted = oracle::parse("n=1; a=[0] b=[0] c=1; a=[1] b=[1] c=1");
  const auto s = extended_gradient(shifted, pt({0.0}));
  CHECK(s.euler_residual == doctest::Approx(1.0));

  // rho = |z1|^4 + 1 has H = 0 at the origin while g = 0: consistent, Z = 0
  const auto flat = oracle::parse("n=1; a=[0] b=[0] c=1; a=[2] b=[2] c=1");
  const auto f = extended_gradient(flat, pt({0.0}));
  CHECK(f.field.norm() == 0.0);
  CHECK(f.consistent);
}

TEST_CASE("extended_gradient: inconsistent system is flagged") {
  // rho = 1 + z1 + zbar1 + |z1|^4 at z1 = 0: H = 0, g = 1.
  const auto p = oracle::parse("n=1; a=[0] b=[0] c=1; a=[1] b=[0] c=1; a=[0] b=[1] c=1; a=[2] b=[2] c=1");
  const auto s = extended_gradient(p, pt({0.0}));
  CHECK_FALSE(s.consistent);
  CHECK(s.system_residual == doctest::Approx(1.0));
}

TEST_CASE("real_field_velocity") {
  const CVector z = pt({{1, 2}});
  CHECK(real_field_velocity(RealFieldKind::X, z)[0] == Complex(0.5, 1));
  CHECK(real_field_velocity(RealFieldKind::Y, z)[0] == Complex(-1, 0.5));
  CHECK(real_field_velocity(RealFieldKind::Theta, z)[0] == Complex(-2, 1));
}

TEST_CASE("property: Z agrees with an FD oracle on P") {
  std::mt19937_64 rng(31);
  for (const auto& p : {oracle::bad(), oracle::ball_squared(), oracle::weighted()}) {
    for (int i = 0; i < 50; ++i) {
      const CPoint z = oracle::random_point_in_shell(rng, p, 0.2, 5.0, 1.5);
      const auto s = complex_gradient(p, z);
      CHECK((s.field - oracle_z(p, z)).norm() < 1e-4 * std::max(1.0, s.field.norm()));
    }
  }
}

TEST_CASE("property: Euler identity holds exactly for MA potentials") {
  std::mt19937_64 rng(32);
  for (const auto& p : {oracle::ball(2), oracle::ball(3), oracle::weighted(), oracle::ball_squared(),
                        oracle::quartic_sum()}) {
    std::vector<CPoint> pts;
    for (int i = 0; i < 300; ++i) pts.push_back(oracle::random_point_in_shell(rng, p, 0.01, 10.0, 2.0));
    CHECK(euler_residual_scan(p, pts, Execution::Serial) < 1e-10);
    CHECK(euler_residual_scan(p, pts, Execution::Parallel) == euler_residual_scan(p, pts, Execution::Serial));
  }
  CHECK_THROWS_AS(euler_residual_scan(oracle::ball(2), {}), Error);
}

TEST_CASE("cr_residual: positive and negative evidence") {
  std::mt19937_64 rng(33);
  for (const auto& p : {oracle::ball(2), oracle::weighted()}) {
    std::vector<CPoint> pts;
    for (int i = 0; i < 100; ++i) pts.push_back(oracle::random_point_in_shell(rng, p, 0.1, 10.0, 2.0));
    pts.push_back(pt({1.0, 0.0}));
    pts.push_back(pt({0.7, {0, 1e-7}}));
    const auto rep = cr_residual(p, pts, 1e-4);
    CHECK(rep.max_residual < 1e-6);
  }
  const auto w = cr_residual(oracle::weighted(), std::vector<CPoint>{pt({1.0, 0.0})}, 1e-4);
  CHECK(w.mixed_stencil.size() == 1);

  std::vector<CPoint> pts;
  for (int i = 0; i < 50; ++i) pts.push_back(oracle::random_point_in_shell(rng, oracle::bad(), 0.1, 10.0, 2.0));
  const auto bad = cr_residual(oracle::bad(), pts, 1e-4);
  CHECK(bad.max_residual > 1e-2);
  CHECK(bad.argmax < pts.size());
  CHECK(cr_residual(oracle::bad(), pts, 1e-4, Execution::Serial).max_residual == bad.max_residual);

  CHECK_THROWS_AS(cr_residual(oracle::ball(2), std::vector<CPoint>{pt({1e-4, 0.0})}, 1e-4), DomainError);
}

TEST_CASE("theta_orbit_det_check: weighted from (1, 0)") {
  const auto rep = theta_orbit_det_check(oracle::weighted(), pt({1.0, 0.0}), 5.0, 5000);
  CHECK_FALSE(rep.skipped);
  CHECK(rep.max_abs_det < 1e-8);
  CHECK(rep.max_rho_deviation < 1e-6);
  CHECK(rep.path.size() == 5001);
  // the orbit is z1 -> e^{it} z1
  CHECK(std::abs(rep.path.back()[0] - std::exp(Complex(0, 5.0))) < 1e-9);
  CHECK(theta_orbit_det_check(oracle::weighted(), pt({1.0, 1.0}), 1.0, 10).skipped);
}

TEST_CASE("property: Theta preserves rho and X doubles it at t = log 2") {
  const GradientKernel k(oracle::ball_squared());
  const CPoint z0 = pt({0.3, {0.2, -0.5}});
  const double r0 = k.levi().rho(z0);
  const CPoint rot = integrate(k.velocity_field(RealFieldKind::Theta), z0, 3.0, 1e-3);
  CHECK(k.levi().rho(rot) == doctest::Approx(r0).epsilon(1e-10));
  const CPoint grown = integrate(k.velocity_field(RealFieldKind::X), z0, std::log(2.0), 1e-3);
  CHECK(k.levi().rho(grown) == doctest::Approx(2 * r0).epsilon(1e-10));
  const CPoint spun = integrate(k.velocity_field(RealFieldKind::Y), z0, 1.0, 1e-3);
  CHECK(k.levi().rho(spun) == doctest::Approx(r0).epsilon(1e-10));
}
