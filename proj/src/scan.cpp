#include "mafol/scan.hpp"

#include <cmath>
#include <random>

namespace mafol {

std::vector<CPoint> random_samples(const PolyPotential& p, std::size_t count, std::uint64_t seed,
                                   const SampleDomain& domain) {
  const int n = p.dim();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-domain.box_radius, domain.box_radius);
  std::vector<CPoint> out;
  out.reserve(count);
  const std::size_t max_draws = 1000 * std::max<std::size_t>(count, 1);
  for (std::size_t draws = 0; out.size() < count; ++draws) {
    if (draws >= max_draws) throw Error("random_samples: acceptance rate too low for the domain");
    CPoint z(n);
    for (int j = 0; j < n; ++j) {
      const double re = u(rng);
      const double im = u(rng);
      z[j] = {re, im};
    }
    const double r = evaluate(p, z);
    if (r > domain.rho_min && r < domain.rho_max) out.push_back(std::move(z));
  }
  return out;
}

std::vector<CPoint> cube_grid(int n, int per_axis, double radius) {
  if (n <= 0 || per_axis <= 0) throw Error("cube_grid: dimension and points per axis must be positive");
  const int axes = 2 * n;
  std::size_t total = 1;
  for (int a = 0; a < axes; ++a) total *= static_cast<std::size_t>(per_axis);
  const double cell = 2.0 * radius / per_axis;

  std::vector<CPoint> out;
  out.reserve(total);
  std::vector<int> idx(axes, 0);
  for (std::size_t k = 0; k < total; ++k) {
    CPoint z(n);
    for (int j = 0; j < n; ++j) {
      z[j] = {-radius + (idx[2 * j] + 0.5) * cell, -radius + (idx[2 * j + 1] + 0.5) * cell};
    }
    out.push_back(std::move(z));
    for (int a = axes - 1; a >= 0; --a) {
      if (++idx[a] < per_axis) break;
      idx[a] = 0;
    }
  }
  return out;
}

std::vector<CPoint> level_set_samples(const PolyPotential& p, double level, std::size_t count,
                                      std::uint64_t seed) {
  const int n = p.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::vector<CPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    CPoint u(n);
    for (int j = 0; j < n; ++j) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      u[j] = {re, im};
    }
    if (u.norm() < 1e-6) continue;
    u /= u.norm();
    double lo = 0.0, hi = 1.0;
    for (int k = 0; evaluate(p, hi * u) < level; ++k) {
      if (k > 200) throw Error("level_set_samples: rho does not reach the level along a ray");
      lo = hi;
      hi *= 2.0;
    }
    for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k) {
      const double mid = 0.5 * (lo + hi);
      (evaluate(p, mid * u) < level ? lo : hi) = mid;
    }
    out.push_back(0.5 * (lo + hi) * u);
  }
  return out;
}

std::vector<PointAnalysis> analyze_points(const PolyPotential& p, std::span<const CPoint> points,
                                          double tol_rank, Execution exec) {
  GradientOptions opts;
  opts.tol_rank = tol_rank;
  const GradientKernel kernel(p, opts);
  const int n = p.dim();
  std::vector<PointAnalysis> out(points.size());
  for_each_index(points.size(), exec, [&](std::size_t k) {
    PointAnalysis& a = out[k];
    const LeviData d = kernel.levi().data(points[k], tol_rank);
    a.point = points[k];
    a.rho = d.rho;
    a.det_h = d.det_h;
    a.stratum = d.stratum;
    if (d.stratum == Stratum::OutsideDomain) return;
    const MaResidual ma = kernel.levi().ma(points[k]);
    a.ma_raw = ma.raw;
    a.ma_scaled = ma.scaled;
    const GradientSample g = kernel.extended(points[k]);
    a.euler_residual = g.euler_residual;
    a.method = g.method;
    const Complex via_lemma = std::pow(d.rho, n + 1) * ma.det_u;
    a.lemma_gap = std::abs(kernel.levi().rank_identity(points[k]) - via_lemma) /
                  std::max(1.0, std::abs(via_lemma));
  });
  return out;
}

}  // namespace mafol
