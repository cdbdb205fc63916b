#pragma once

// Checker for the bidegree criterion: a positive homogeneous polynomial rho
// of degree 2k with log rho plurisubharmonic and Monge-Ampere must be of
// bidegree (k, k), with complex gradient Z(w) = w / k.

#include <map>
#include <span>
#include <string>
#include <vector>

#include "mafol/homogeneity.hpp"
#include "mafol/scan.hpp"

namespace mafol {

struct BurnsOptions {
  int grid_per_axis = 20;  // the grid has grid_per_axis^{2n} points
  double box = 1.0;
  double tol_ma = 1e-8;        // on the scaled MA residual
  double tol_psh = 1e-8;       // lambda_min(U) / max(1, ||U||_F) >= -tol_psh
  double tol_radial = 1e-8;    // ||Z(w) - w/k||
  double tol_identity = 1e-8;  // component identities, relative
  double tol_rank = kDefaultTolRank;
  bool keep_grid = false;      // fill BurnsReport::grid
  Execution exec = Execution::Parallel;
};

enum class Verdict { Pass, Fail, Inconclusive };

std::string_view to_string(Verdict v);

struct BurnsGridPoint {
  CPoint point;
  double rho = 0.0;
  double sphere_rho = 0.0;  // rho(w / |w|)
  double ma_scaled = 0.0;
  double min_eig_scaled = 0.0;
  double radial = 0.0;    // only on P points, else 0
  double identity = 0.0;
  Stratum stratum = Stratum::OutsideDomain;
};

struct BurnsReport {
  int degree2k = 0;
  bool is_homogeneous = false;
  std::map<Bidegree, double> bidegree_mass;  // sum of |coefficients| per (l, m)
  std::size_t grid_points = 0;
  double ma_max_residual = 0.0;  // scaled
  CPoint ma_argmax;
  double min_log_levi_eigen = 0.0;
  double radial_field_residual = 0.0;
  double component_identity_residual = 0.0;
  double min_rho_on_sphere = 0.0;
  /// (k, k) support agrees with feasibility of equal weights c_j = 1/k.
  bool cross_check_ok = true;
  Verdict verdict = Verdict::Fail;
  std::vector<std::string> reasons;
  std::vector<BurnsGridPoint> grid;
};

BurnsReport burns_check(const PolyPotential& p, const BurnsOptions& opts = {});

/// Max |rho(l z) - |l|^{2k} rho(z)| / rho(z) over samples and scalars l.
double log_growth_check(const PolyPotential& p, int k, std::span<const CPoint> z_samples,
                        std::span<const Complex> lambdas);

}  // namespace mafol
