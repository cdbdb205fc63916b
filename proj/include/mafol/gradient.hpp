#pragma once

// The complex gradient Z of rho, solving sum_mu Z^mu rho_{mu nubar} = rho_nubar,
// its least-squares extension across degenerate points, and the diagnostics
// built on it (Euler identity Z(rho) = rho, Cauchy-Riemann residuals and the
// Theta-orbit invariance of D = det H).

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mafol/integrator.hpp"
#include "mafol/levi.hpp"
#include "mafol/parallel.hpp"

namespace mafol {

enum class GradientMethod { DirectSolve, LeastSquaresExtension };

std::string_view to_string(GradientMethod m);

struct GradientSample {
  CPoint point;
  CVector field;  // Z^mu
  GradientMethod method = GradientMethod::DirectSolve;
  double euler_residual = 0.0;  // |sum Z^mu rho_mu - rho|
  double system_residual = 0.0; // ||H^T Z - conj(g)||
  bool consistent = true;
};

/// Real vector fields derived from Z. Each is realized by its velocity
/// dz/dt on C^n:
///   X     = (Z + Zbar)/2           dz/dt = Z/2
///   Y     = J X                    dz/dt = i Z/2
///   Theta = i (Z - Zbar)           dz/dt = i Z
/// With Z(rho) = rho this gives X(rho) = rho, Y(rho) = 0, and the leaf map
/// f(t + i s) = flow_X(t, flow_Y(s, p)) is holomorphic in t + i s.
enum class RealFieldKind { X, Y, Theta };

CVector real_field_velocity(RealFieldKind kind, const CVector& field);

/// Growth constant of rho along X: rho(flow_X(t, z)) = exp(kKappa t) rho(z).
inline constexpr double kKappa = 1.0;

struct GradientOptions {
  double tol_rank = kDefaultTolRank;
  /// Consistency threshold on the achieved residual, relative to max(1, ||g||).
  double tol_consistency = 1e-8;
  /// Relative eigenvalue cutoff of the pseudo-inverse. Much smaller than
  /// tol_rank so that near-degenerate points still get the exact solve.
  double pinv_cutoff = 1e-13;
};

class GradientKernel {
 public:
  explicit GradientKernel(PolyPotential p, GradientOptions opts = {});

  const LeviKernel& levi() const noexcept { return levi_; }
  const GradientOptions& options() const noexcept { return opts_; }
  int dim() const noexcept { return levi_.dim(); }

  /// Direct solve on P. Throws SingularHessianError off P and DomainError
  /// outside M_*.
  GradientSample direct(const CPoint& z) const;

  /// Direct solve on P, minimum-norm least squares elsewhere in M_*.
  GradientSample extended(const CPoint& z) const;

  /// Velocity of the given real field using the extended gradient.
  CVector velocity(RealFieldKind kind, const CPoint& z) const;
  VelocityField velocity_field(RealFieldKind kind) const;

 private:
  GradientSample finish(const CPoint& z, double rho, const CVector& g, const CMatrix& h,
                        CVector field, GradientMethod method) const;

  LeviKernel levi_;
  GradientOptions opts_;
};

GradientSample complex_gradient(const PolyPotential& p, const CPoint& z,
                                double tol_rank = kDefaultTolRank);
GradientSample extended_gradient(const PolyPotential& p, const CPoint& z, double tol = 1e-8);

/// Max Euler residual of the extended gradient. Throws on an empty sample set.
double euler_residual_scan(const PolyPotential& p, std::span<const CPoint> samples,
                           Execution exec = Execution::Parallel);

struct CrReport {
  double max_residual = 0.0;
  std::size_t argmax = 0;
  /// Samples whose stencil touches a stratum other than the centre's.
  std::vector<std::size_t> mixed_stencil;
};

/// Max over samples, mu, nu of the central-difference estimate of
/// dZ^mu/dzbar^nu, with step h. Throws DomainError if a stencil point leaves
/// M_*.
CrReport cr_residual(const PolyPotential& p, std::span<const CPoint> samples, double h,
                     Execution exec = Execution::Parallel);

struct OrbitReport {
  bool skipped = false;  // z0 was in P; the check needs a degenerate start
  double max_abs_det = 0.0;
  double max_rho_deviation = 0.0;
  std::vector<CPoint> path;  // start point followed by every step
};

/// Integrates the Theta field from z0 for t in [0, t_max] in `steps` RK4
/// steps, tracking |D| = |det H| and |rho - rho(z0)|.
OrbitReport theta_orbit_det_check(const PolyPotential& p, const CPoint& z0, double t_max,
                                  long steps, double tol_rank = kDefaultTolRank);

}  // namespace mafol
