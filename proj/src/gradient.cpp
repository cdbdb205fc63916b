#include "mafol/gradient.hpp"

#include <algorithm>
#include <cmath>

namespace mafol {

std::string_view to_string(GradientMethod m) {
  return m == GradientMethod::DirectSolve ? "direct-solve" : "least-squares-extension";
}

CVector real_field_velocity(RealFieldKind kind, const CVector& field) {
  const Complex i{0.0, 1.0};
  switch (kind) {
    case RealFieldKind::X: return 0.5 * field;
    case RealFieldKind::Y: return (0.5 * i) * field;
    case RealFieldKind::Theta: return i * field;
  }
  return field;
}

GradientKernel::GradientKernel(PolyPotential p, GradientOptions opts)
    : levi_(std::move(p)), opts_(opts) {}

GradientSample GradientKernel::finish(const CPoint& z, double rho, const CVector& g,
                                      const CMatrix& h, CVector field,
                                      GradientMethod method) const {
  GradientSample s;
  s.point = z;
  s.method = method;
  s.euler_residual = std::abs(field.cwiseProduct(g).sum() - rho);
  const CVector rhs = g.conjugate();
  s.system_residual = (h.transpose() * field - rhs).norm();
  s.consistent = s.system_residual <= opts_.tol_consistency * std::max(1.0, rhs.norm());
  s.field = std::move(field);
  return s;
}

GradientSample GradientKernel::direct(const CPoint& z) const {
  const LeviData d = levi_.data(z, opts_.tol_rank);
  if (d.stratum == Stratum::OutsideDomain) throw DomainError("complex gradient requires rho > 0");
  if (d.stratum != Stratum::StrictlyPsh) {
    throw SingularHessianError("Levi form is degenerate at this point; use the extended gradient");
  }
  // sum_mu Z^mu H(mu, nu) = conj(g_nu)  <=>  H^T Z = conj(g)
  CVector field = d.hessian.transpose().partialPivLu().solve(d.grad.conjugate());
  return finish(z, d.rho, d.grad, d.hessian, std::move(field), GradientMethod::DirectSolve);
}

GradientSample GradientKernel::extended(const CPoint& z) const {
  const LeviData d = levi_.data(z, opts_.tol_rank);
  if (d.stratum == Stratum::OutsideDomain) throw DomainError("extended gradient requires rho > 0");
  if (d.stratum == Stratum::StrictlyPsh) {
    CVector field = d.hessian.transpose().partialPivLu().solve(d.grad.conjugate());
    return finish(z, d.rho, d.grad, d.hessian, std::move(field), GradientMethod::DirectSolve);
  }
  // H^T = conj(H) is Hermitian: pseudo-inverse through its eigen-decomposition.
  const CMatrix a = d.hessian.conjugate();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  const RVector& lam = es.eigenvalues();
  const double cutoff = opts_.pinv_cutoff * std::max(1.0, lam.cwiseAbs().maxCoeff());
  CVector coeffs = es.eigenvectors().adjoint() * d.grad.conjugate();
  for (Eigen::Index k = 0; k < lam.size(); ++k) {
    coeffs[k] = std::abs(lam[k]) > cutoff ? coeffs[k] / lam[k] : Complex{};
  }
  CVector field = es.eigenvectors() * coeffs;
  return finish(z, d.rho, d.grad, d.hessian, std::move(field),
                GradientMethod::LeastSquaresExtension);
}

CVector GradientKernel::velocity(RealFieldKind kind, const CPoint& z) const {
  return real_field_velocity(kind, extended(z).field);
}

VelocityField GradientKernel::velocity_field(RealFieldKind kind) const {
  return [this, kind](const CPoint& z) { return velocity(kind, z); };
}

GradientSample complex_gradient(const PolyPotential& p, const CPoint& z, double tol_rank) {
  GradientOptions opts;
  opts.tol_rank = tol_rank;
  return GradientKernel(p, opts).direct(z);
}

GradientSample extended_gradient(const PolyPotential& p, const CPoint& z, double tol) {
  GradientOptions opts;
  opts.tol_consistency = tol;
  return GradientKernel(p, opts).extended(z);
}

double euler_residual_scan(const PolyPotential& p, std::span<const CPoint> samples,
                           Execution exec) {
  if (samples.empty()) throw Error("euler_residual_scan: empty sample set");
  const GradientKernel kernel(p);
  std::vector<double> res(samples.size());
  for_each_index(samples.size(), exec,
                 [&](std::size_t i) { res[i] = kernel.extended(samples[i]).euler_residual; });
  return *std::max_element(res.begin(), res.end());
}

namespace {

struct CrPoint {
  double residual = 0.0;
  bool mixed = false;
};

CrPoint cr_at(const GradientKernel& kernel, const CPoint& z, double h) {
  const int n = kernel.dim();
  const Complex i{0.0, 1.0};
  const Stratum centre = kernel.levi().data(z, kernel.options().tol_rank).stratum;
  CrPoint out;
  auto eval = [&](const CPoint& w) {
    const LeviData d = kernel.levi().data(w, kernel.options().tol_rank);
    if (d.stratum == Stratum::OutsideDomain) {
      throw DomainError("Cauchy-Riemann stencil leaves M_* (rho <= 0)");
    }
    if (d.stratum != centre) out.mixed = true;
    return kernel.extended(w).field;
  };
  for (int nu = 0; nu < n; ++nu) {
    CPoint w = z;
    w[nu] = z[nu] + h;
    const CVector xp = eval(w);
    w[nu] = z[nu] - h;
    const CVector xm = eval(w);
    w[nu] = z[nu] + i * h;
    const CVector yp = eval(w);
    w[nu] = z[nu] - i * h;
    const CVector ym = eval(w);
    // d/dzbar = (d/dx + i d/dy) / 2
    const CVector dzbar = ((xp - xm) + i * (yp - ym)) / (4.0 * h);
    out.residual = std::max(out.residual, dzbar.cwiseAbs().maxCoeff());
  }
  return out;
}

}  // namespace

CrReport cr_residual(const PolyPotential& p, std::span<const CPoint> samples, double h,
                     Execution exec) {
  if (samples.empty()) throw Error("cr_residual: empty sample set");
  if (!(h > 0.0)) throw Error("cr_residual: step must be positive");
  const GradientKernel kernel(p);
  std::vector<CrPoint> pts(samples.size());
  for_each_index(samples.size(), exec, [&](std::size_t k) { pts[k] = cr_at(kernel, samples[k], h); });
  CrReport rep;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    if (pts[k].residual > rep.max_residual || k == 0) {
      rep.max_residual = pts[k].residual;
      rep.argmax = k;
    }
    if (pts[k].mixed) rep.mixed_stencil.push_back(k);
  }
  return rep;
}

OrbitReport theta_orbit_det_check(const PolyPotential& p, const CPoint& z0, double t_max,
                                  long steps, double tol_rank) {
  if (steps <= 0) throw IntegrationError("orbit check needs a positive step count");
  GradientOptions opts;
  opts.tol_rank = tol_rank;
  const GradientKernel kernel(p, opts);
  const LeviData start = kernel.levi().data(z0, tol_rank);
  if (start.stratum == Stratum::OutsideDomain) throw DomainError("orbit start outside M_*");

  OrbitReport rep;
  rep.path.push_back(z0);
  if (start.stratum == Stratum::StrictlyPsh) {
    rep.skipped = true;
    return rep;
  }
  rep.max_abs_det = std::abs(start.det_h);
  const double rho0 = start.rho;
  const VelocityField theta = kernel.velocity_field(RealFieldKind::Theta);

  CPoint z = z0;
  const double h = t_max / static_cast<double>(steps);
  try {
    integrate(theta, z, t_max, h, [&](const CPoint& next) {
      const double r = kernel.levi().rho(next);
      if (!(r > 0.0)) throw IntegrationError("Theta orbit exits M_*");
      rep.max_abs_det = std::max(rep.max_abs_det, std::abs(kernel.levi().hessian(next).determinant()));
      rep.max_rho_deviation = std::max(rep.max_rho_deviation, std::abs(r - rho0));
      rep.path.push_back(next);
      return true;
    });
  } catch (const DomainError& e) {
    throw IntegrationError(std::string("Theta orbit exits M_*: ") + e.what());
  }
  return rep;
}

}  // namespace mafol
