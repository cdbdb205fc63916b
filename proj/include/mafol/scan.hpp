#pragma once

// Seeded sample generation and the per-point analysis kernel behind grid
// scans. All generators are serial and deterministic for a given seed;
// analysis is parallel over points with results in input order.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "mafol/gradient.hpp"

namespace mafol {

struct SampleDomain {
  double box_radius = 2.0;  // uniform in the real 2n-cube [-r, r]^{2n}
  double rho_min = 1e-12;   // reject rho <= rho_min
  double rho_max = std::numeric_limits<double>::infinity();  // reject rho >= rho_max
};

/// Rejection sampling with std::mt19937_64. Throws if the acceptance rate is
/// too low to fill `count` within 1000 * count draws.
std::vector<CPoint> random_samples(const PolyPotential& p, std::size_t count, std::uint64_t seed,
                                   const SampleDomain& domain = {});

/// Cell-centred grid with `per_axis` points on each of the 2n real axes of
/// [-r, r]^{2n}; never contains the origin.
std::vector<CPoint> cube_grid(int n, int per_axis, double radius);

/// Points on {rho = level}: random directions, then bisection along the ray
/// t -> t u. Assumes rho(0) < level and rho grows without bound along rays.
std::vector<CPoint> level_set_samples(const PolyPotential& p, double level, std::size_t count,
                                      std::uint64_t seed);

struct PointAnalysis {
  CPoint point;
  double rho = 0.0;
  Complex det_h;
  Stratum stratum = Stratum::OutsideDomain;
  double ma_raw = 0.0;
  double ma_scaled = 0.0;
  double euler_residual = 0.0;
  GradientMethod method = GradientMethod::DirectSolve;
  /// |rank identity - rho^{n+1} det U| / max(1, rho^{n+1} |det U|).
  double lemma_gap = 0.0;
};

std::vector<PointAnalysis> analyze_points(const PolyPotential& p, std::span<const CPoint> points,
                                          double tol_rank = kDefaultTolRank,
                                          Execution exec = Execution::Parallel);

}  // namespace mafol
