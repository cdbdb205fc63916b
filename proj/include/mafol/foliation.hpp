#pragma once

// Leaves of the Monge-Ampere foliation traced as f(t + i s) =
// flow_X(t, flow_Y(s, base)), with the diagnostics that certify them:
// log rho affine in t, rho constant in s, and the stratum constant.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "mafol/gradient.hpp"

namespace mafol {

struct LeafNode {
  CPoint point;
  double rho = 0.0;
  Complex det_h;
  RVector eigenvalues;  // of the Levi form of rho, ascending
  Stratum stratum = Stratum::OutsideDomain;
};

struct LeafTraceConfig {
  IntegratorConfig integrator;
  double tol_rank = kDefaultTolRank;
  /// Nodes with rho at or below this floor are dropped and the trace flagged.
  double rho_floor = 1e-12;
};

struct LeafTrace {
  CPoint base;
  double base_rho = 0.0;
  Stratum base_stratum = Stratum::OutsideDomain;
  std::vector<double> t_values;
  std::vector<double> s_values;
  /// Row-major by s: nodes[j * t_values.size() + i] is the node at (t_i, s_j).
  /// Empty entries were not reached because the flow left the valid region.
  std::vector<std::optional<LeafNode>> nodes;
  LeafTraceConfig config;
  bool truncated = false;

  const std::optional<LeafNode>& node(std::size_t ti, std::size_t sj) const {
    return nodes[sj * t_values.size() + ti];
  }
};

/// Throws DomainError if rho(z0) <= 0. Grids need not be sorted or contain 0;
/// each flow starts at time 0 and sweeps outward in both directions.
LeafTrace trace_leaf(const PolyPotential& p, const CPoint& z0, std::span<const double> t_grid,
                     std::span<const double> s_grid, const LeafTraceConfig& cfg = {},
                     Execution exec = Execution::Parallel);

/// max |log rho(node) - log rho(base) - kKappa t| over reached nodes.
double leaf_log_linearity(const LeafTrace& trace);

/// max over t of (max_s rho - min_s rho) / min_s rho.
double level_set_invariance(const LeafTrace& trace);

struct StratumViolation {
  std::size_t t_index = 0;
  std::size_t s_index = 0;
  Stratum stratum = Stratum::OutsideDomain;
  double abs_det = 0.0;
};

struct StratumInvarianceReport {
  bool pass = true;
  Stratum base_stratum = Stratum::OutsideDomain;
  std::vector<StratumViolation> violations;
};

/// Re-derives every node's stratum from its eigenvalues under tol_rank and
/// compares it with the base stratum.
StratumInvarianceReport leaf_stratum_invariance(const LeafTrace& trace, double tol_rank);

/// Columns: t, s, re_z1, im_z1, ..., rho, abs_detH, stratum. Unreached nodes
/// are omitted.
void write_trace_csv(std::ostream& out, const LeafTrace& trace);

/// States of dz/dt = f(z) at each requested time, sweeping outward from
/// time 0 in each direction. A state is nullopt once the trajectory leaves
/// the box, hits rho <= rho_floor, or the field fails.
std::vector<std::optional<CPoint>> sweep_flow(const GradientKernel& kernel, RealFieldKind kind,
                                              const CPoint& start, std::span<const double> times,
                                              const LeafTraceConfig& cfg);

}  // namespace mafol
