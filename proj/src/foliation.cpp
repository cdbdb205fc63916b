#include "mafol/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "mafol/format.hpp"

namespace mafol {

std::vector<std::optional<CPoint>> sweep_flow(const GradientKernel& kernel, RealFieldKind kind,
                                              const CPoint& start, std::span<const double> times,
                                              const LeafTraceConfig& cfg) {
  std::vector<std::optional<CPoint>> out(times.size());
  const VelocityField f = kernel.velocity_field(kind);

  auto valid = [&](const CPoint& z) {
    return z.norm() <= cfg.integrator.box_radius && kernel.levi().rho(z) > cfg.rho_floor;
  };

  for (const double dir : {1.0, -1.0}) {
    std::vector<std::size_t> order;
    for (std::size_t k = 0; k < times.size(); ++k) {
      if ((dir > 0 && times[k] >= 0.0) || (dir < 0 && times[k] < 0.0)) order.push_back(k);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(times[a]) < std::abs(times[b]);
    });

    CPoint z = start;
    double now = 0.0;
    bool alive = valid(z);
    for (std::size_t k : order) {
      if (!alive) break;
      try {
        alive = integrate(f, z, times[k] - now, cfg.integrator.step, valid);
      } catch (const Error&) {
        alive = false;
      }
      if (!alive) break;
      now = times[k];
      out[k] = z;
    }
  }
  return out;
}

LeafTrace trace_leaf(const PolyPotential& p, const CPoint& z0, std::span<const double> t_grid,
                     std::span<const double> s_grid, const LeafTraceConfig& cfg, Execution exec) {
  if (t_grid.empty() || s_grid.empty()) throw Error("trace_leaf: empty t or s grid");
  GradientOptions opts;
  opts.tol_rank = cfg.tol_rank;
  const GradientKernel kernel(p, opts);
  if (!(kernel.levi().rho(z0) > 0.0)) throw DomainError("trace_leaf: base point has rho <= 0");

  LeafTrace trace;
  trace.base = z0;
  trace.t_values.assign(t_grid.begin(), t_grid.end());
  trace.s_values.assign(s_grid.begin(), s_grid.end());
  trace.config = cfg;
  const LeviData base = kernel.levi().data(z0, cfg.tol_rank);
  trace.base_rho = base.rho;
  trace.base_stratum = base.stratum;
  const std::size_t nt = t_grid.size();
  const std::size_t ns = s_grid.size();
  trace.nodes.resize(nt * ns);

  // Shared s-sweep, then one independent X-ray per s value.
  const auto ray_starts = sweep_flow(kernel, RealFieldKind::Y, z0, s_grid, cfg);
  for_each_index(ns, exec, [&](std::size_t j) {
    if (!ray_starts[j]) return;
    const auto ray = sweep_flow(kernel, RealFieldKind::X, *ray_starts[j], t_grid, cfg);
    for (std::size_t i = 0; i < nt; ++i) {
      if (!ray[i]) continue;
      const LeviData d = kernel.levi().data(*ray[i], cfg.tol_rank);
      trace.nodes[j * nt + i] = LeafNode{*ray[i], d.rho, d.det_h, d.eigenvalues, d.stratum};
    }
  });
  trace.truncated = std::any_of(trace.nodes.begin(), trace.nodes.end(),
                                [](const auto& n) { return !n.has_value(); });
  return trace;
}

double leaf_log_linearity(const LeafTrace& trace) {
  const double log_base = std::log(trace.base_rho);
  double worst = 0.0;
  for (std::size_t j = 0; j < trace.s_values.size(); ++j) {
    for (std::size_t i = 0; i < trace.t_values.size(); ++i) {
      const auto& n = trace.node(i, j);
      if (!n) continue;
      worst = std::max(worst, std::abs(std::log(n->rho) - log_base - kKappa * trace.t_values[i]));
    }
  }
  return worst;
}

double level_set_invariance(const LeafTrace& trace) {
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.t_values.size(); ++i) {
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (std::size_t j = 0; j < trace.s_values.size(); ++j) {
      const auto& n = trace.node(i, j);
      if (!n) continue;
      lo = any ? std::min(lo, n->rho) : n->rho;
      hi = any ? std::max(hi, n->rho) : n->rho;
      any = true;
    }
    if (any) worst = std::max(worst, (hi - lo) / lo);
  }
  return worst;
}

StratumInvarianceReport leaf_stratum_invariance(const LeafTrace& trace, double tol_rank) {
  const int n = static_cast<int>(trace.base.size());
  auto stratum_of = [&](const LeafNode& node) {
    return classify(node.rho, numerical_rank(node.eigenvalues, tol_rank), n);
  };
  StratumInvarianceReport rep;
  // The base is node (t = 0, s = 0) when present; otherwise re-derive it.
  std::optional<Stratum> base;
  for (std::size_t j = 0; j < trace.s_values.size() && !base; ++j) {
    for (std::size_t i = 0; i < trace.t_values.size(); ++i) {
      const auto& node = trace.node(i, j);
      if (node && trace.t_values[i] == 0.0 && trace.s_values[j] == 0.0) {
        base = stratum_of(*node);
        break;
      }
    }
  }
  rep.base_stratum = base.value_or(trace.base_stratum);
  for (std::size_t j = 0; j < trace.s_values.size(); ++j) {
    for (std::size_t i = 0; i < trace.t_values.size(); ++i) {
      const auto& node = trace.node(i, j);
      if (!node) continue;
      const Stratum s = stratum_of(*node);
      if (s != rep.base_stratum) {
        rep.violations.push_back({i, j, s, std::abs(node->det_h)});
      }
    }
  }
  rep.pass = rep.violations.empty();
  return rep;
}

void write_trace_csv(std::ostream& out, const LeafTrace& trace) {
  const int n = static_cast<int>(trace.base.size());
  out << "t,s";
  for (int k = 1; k <= n; ++k) out << ",re_z" << k << ",im_z" << k;
  out << ",rho,abs_detH,stratum\n";
  for (std::size_t j = 0; j < trace.s_values.size(); ++j) {
    for (std::size_t i = 0; i < trace.t_values.size(); ++i) {
      const auto& node = trace.node(i, j);
      if (!node) continue;
      out << num(trace.t_values[i]) << ',' << num(trace.s_values[j]);
      for (int k = 0; k < n; ++k) {
        out << ',' << num(node->point[k].real()) << ',' << num(node->point[k].imag());
      }
      out << ',' << num(node->rho) << ',' << num(std::abs(node->det_h)) << ','
          << to_string(node->stratum) << '\n';
    }
  }
}

}  // namespace mafol
