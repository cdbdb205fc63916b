#include "mafol/burns.hpp"

#include <algorithm>
#include <cmath>

#include "mafol/format.hpp"

namespace mafol {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

struct ComponentDerivs {
  std::vector<PolyExpr> d_zbar;               // rho^{lm}_{abar}
  std::vector<std::vector<PolyExpr>> d_mixed; // [alpha][mu] -> rho^{lm}_{mu abar}
};

}  // namespace

BurnsReport burns_check(const PolyPotential& p, const BurnsOptions& opts) {
  BurnsReport rep;
  const int n = p.dim();
  const auto deg = homogeneous_degree(p);
  rep.is_homogeneous = deg.has_value();

  const auto components = bidegree_decompose(p);
  for (const auto& [bd, expr] : components) {
    double mass = 0.0;
    for (const auto& [key, c] : expr.terms()) mass += std::abs(c);
    rep.bidegree_mass[bd] = mass;
  }

  if (!deg || *deg == 0) {
    rep.verdict = Verdict::Fail;
    rep.reasons.push_back(deg ? "homogeneity gate: rho is constant"
                              : "homogeneity gate: rho is not homogeneous of even degree");
    return rep;
  }
  rep.degree2k = *deg;
  const int k = *deg / 2;
  const double inv_k = 1.0 / k;

  const bool kk_only = std::all_of(rep.bidegree_mass.begin(), rep.bidegree_mass.end(),
                                   [&](const auto& e) { return e.first == Bidegree{k, k}; });

  // Equal weights c_j = 1/k satisfy every weight equation iff |a| = |b| = k
  // for every monomial.
  const WeightSolution ws = find_weights(p);
  const bool equal_weights_ok = std::all_of(ws.equations.begin(), ws.equations.end(), [&](const auto& eq) {
    int s = 0;
    for (int c : eq.coeffs) s += c;
    return s == k;
  });
  rep.cross_check_ok = equal_weights_ok == kk_only;

  std::vector<ComponentDerivs> comp;
  for (const auto& [bd, expr] : components) {
    ComponentDerivs cd;
    for (int a = 0; a < n; ++a) {
      PolyExpr dzb = wirtinger_zbar(expr, a);
      std::vector<PolyExpr> mixed;
      for (int mu = 0; mu < n; ++mu) mixed.push_back(wirtinger_z(dzb, mu));
      cd.d_zbar.push_back(std::move(dzb));
      cd.d_mixed.push_back(std::move(mixed));
    }
    comp.push_back(std::move(cd));
  }

  const std::vector<CPoint> pts = cube_grid(n, opts.grid_per_axis, opts.box);
  rep.grid_points = pts.size();
  const LeviKernel levi(p);
  std::vector<BurnsGridPoint> res(pts.size());

  for_each_index(pts.size(), opts.exec, [&](std::size_t idx) {
    const CPoint& w = pts[idx];
    BurnsGridPoint& out = res[idx];
    out.point = w;
    out.rho = levi.rho(w);
    out.sphere_rho = levi.rho(w / w.norm());

    for (const auto& cd : comp) {
      for (int a = 0; a < n; ++a) {
        const Complex lhs = cd.d_zbar[a].evaluate(w);
        Complex rhs{};
        for (int mu = 0; mu < n; ++mu) rhs += w[mu] * inv_k * cd.d_mixed[a][mu].evaluate(w);
        out.identity = std::max(out.identity, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
      }
    }

    if (!(out.rho > 0.0)) return;
    const CVector g = levi.grad(w);
    const CMatrix h = levi.hessian(w);
    const CMatrix u = h / out.rho - (g * g.adjoint()) / (out.rho * out.rho);
    const double scale = std::max(1.0, u.norm());
    out.ma_scaled = std::abs(u.determinant()) / std::pow(scale, n);
    Eigen::SelfAdjointEigenSolver<CMatrix> ues(u, Eigen::EigenvaluesOnly);
    out.min_eig_scaled = ues.eigenvalues()[0] / scale;

    Eigen::SelfAdjointEigenSolver<CMatrix> hes(h, Eigen::EigenvaluesOnly);
    out.stratum = classify(out.rho, numerical_rank(hes.eigenvalues(), opts.tol_rank), n);
    if (out.stratum == Stratum::StrictlyPsh) {
      const CVector z_field = h.transpose().partialPivLu().solve(g.conjugate());
      out.radial = (z_field - inv_k * w).norm();
    }
  });

  rep.min_rho_on_sphere = res.front().sphere_rho;
  rep.min_log_levi_eigen = res.front().min_eig_scaled;
  rep.ma_argmax = res.front().point;
  for (const BurnsGridPoint& g : res) {
    rep.min_rho_on_sphere = std::min(rep.min_rho_on_sphere, g.sphere_rho);
    if (g.stratum != Stratum::OutsideDomain) {
      rep.min_log_levi_eigen = std::min(rep.min_log_levi_eigen, g.min_eig_scaled);
    }
    if (g.ma_scaled > rep.ma_max_residual) {
      rep.ma_max_residual = g.ma_scaled;
      rep.ma_argmax = g.point;
    }
    rep.radial_field_residual = std::max(rep.radial_field_residual, g.radial);
    rep.component_identity_residual = std::max(rep.component_identity_residual, g.identity);
  }
  if (opts.keep_grid) rep.grid = std::move(res);

  const bool positive = rep.min_rho_on_sphere > 0.0;
  const bool psh = rep.min_log_levi_eigen >= -opts.tol_psh;
  const bool ma = rep.ma_max_residual < opts.tol_ma;
  if (!positive) {
    rep.reasons.push_back("positivity gate: min rho on unit sphere = " +
                          short_num(rep.min_rho_on_sphere) + " <= 0");
  }
  if (!psh) {
    rep.reasons.push_back("plurisubharmonicity gate: min eigenvalue of Levi(log rho) = " +
                          short_num(rep.min_log_levi_eigen) + " < -" + short_num(opts.tol_psh));
  }
  if (!ma) {
    rep.reasons.push_back("Monge-Ampere gate: max scaled residual " + short_num(rep.ma_max_residual) +
                          " >= " + short_num(opts.tol_ma) + " at " + point_string(rep.ma_argmax));
  }
  if (!kk_only) {
    std::string support;
    for (const auto& [bd, mass] : rep.bidegree_mass) {
      if (bd == Bidegree{k, k}) continue;
      support += " (" + std::to_string(bd.first) + "," + std::to_string(bd.second) +
                 ")=" + short_num(mass);
    }
    rep.reasons.push_back("bidegree gate: mass outside (" + std::to_string(k) + "," +
                          std::to_string(k) + "):" + support);
  }
  if (rep.radial_field_residual >= opts.tol_radial) {
    rep.reasons.push_back("radial field gate: max |Z(w) - w/" + std::to_string(k) + "| = " +
                          short_num(rep.radial_field_residual) + " >= " + short_num(opts.tol_radial));
  }
  if (rep.component_identity_residual >= opts.tol_identity) {
    rep.reasons.push_back("component identity gate: max residual " +
                          short_num(rep.component_identity_residual) + " >= " +
                          short_num(opts.tol_identity));
  }

  if (rep.reasons.empty()) {
    rep.verdict = Verdict::Pass;
  } else if (!kk_only && positive && psh && ma) {
    // Hypotheses hold on the grid but the conclusion fails: the grid cannot
    // settle this, so never report it as a pass or a plain failure.
    rep.verdict = Verdict::Inconclusive;
  } else {
    rep.verdict = Verdict::Fail;
  }
  return rep;
}

double log_growth_check(const PolyPotential& p, int k, std::span<const CPoint> z_samples,
                        std::span<const Complex> lambdas) {
  double worst = 0.0;
  for (const CPoint& z : z_samples) {
    const double r = evaluate(p, z);
    if (!(r > 0.0)) throw DomainError("log_growth_check: sample outside M_*");
    for (Complex lambda : lambdas) {
      const double expected = std::pow(std::abs(lambda), 2 * k) * r;
      worst = std::max(worst, std::abs(evaluate(p, (lambda * z).eval()) - expected) / r);
    }
  }
  return worst;
}

}  // namespace mafol
