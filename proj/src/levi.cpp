#include "mafol/levi.hpp"

#include <algorithm>
#include <cmath>

namespace mafol {

std::string_view to_string(Stratum s) {
  switch (s) {
    case Stratum::StrictlyPsh: return "P";
    case Stratum::LowDegeneracy: return "P_n-1";
    case Stratum::Weak: return "W";
    case Stratum::OutsideDomain: return "outside";
  }
  return "?";
}

int numerical_rank(const RVector& eigenvalues, double tol_rank) {
  if (eigenvalues.size() == 0) return 0;
  const double scale = std::max(1.0, eigenvalues.cwiseAbs().maxCoeff());
  return static_cast<int>((eigenvalues.array().abs() > tol_rank * scale).count());
}

Stratum classify(double rho, int rank, int n) {
  if (!(rho > 0.0)) return Stratum::OutsideDomain;
  if (rank == n) return Stratum::StrictlyPsh;
  if (rank == n - 1) return Stratum::LowDegeneracy;
  return Stratum::Weak;
}

LeviKernel::LeviKernel(PolyPotential p) : p_(std::move(p)) {
  const int n = p_.dim();
  dz_.reserve(n);
  for (int mu = 0; mu < n; ++mu) dz_.push_back(wirtinger_z(p_, mu));
  dzdzb_.reserve(n * (n + 1) / 2);
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu) dzdzb_.push_back(wirtinger_zbar(dz_[mu], nu));
  }
}

double LeviKernel::rho(const CPoint& z) const { return evaluate(p_, z); }

CVector LeviKernel::grad(const CPoint& z) const {
  CVector g(dim());
  for (int mu = 0; mu < dim(); ++mu) g[mu] = dz_[mu].evaluate(z);
  return g;
}

CMatrix LeviKernel::hessian(const CPoint& z) const {
  const int n = dim();
  CMatrix h(n, n);
  int k = 0;
  for (int mu = 0; mu < n; ++mu) {
    for (int nu = mu; nu < n; ++nu, ++k) {
      const Complex v = dzdzb_[k].evaluate(z);
      if (mu == nu) {
        h(mu, mu) = v.real();
      } else {
        h(mu, nu) = v;
        h(nu, mu) = std::conj(v);
      }
    }
  }
  return h;
}

LeviData LeviKernel::data(const CPoint& z, double tol_rank) const {
  LeviData d;
  d.point = z;
  d.rho = rho(z);
  d.grad = grad(z);
  d.hessian = hessian(z);
  d.det_h = d.hessian.determinant();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(d.hessian, Eigen::EigenvaluesOnly);
  d.eigenvalues = es.eigenvalues();
  d.rank = numerical_rank(d.eigenvalues, tol_rank);
  d.stratum = classify(d.rho, d.rank, dim());
  return d;
}

CMatrix LeviKernel::log_levi_form(const CPoint& z) const {
  const double r = rho(z);
  if (!(r > 0.0)) throw DomainError("log rho undefined: rho(z) = " + std::to_string(r) + " <= 0");
  const CVector g = grad(z);
  return hessian(z) / r - (g * g.adjoint()) / (r * r);
}

MaResidual LeviKernel::ma(const CPoint& z) const {
  const CMatrix u = log_levi_form(z);
  MaResidual out;
  out.det_u = u.determinant();
  out.raw = std::abs(out.det_u);
  const double scale = std::max(1.0, u.norm());
  out.scaled = out.raw / std::pow(scale, dim());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(u, Eigen::EigenvaluesOnly);
  out.min_eigenvalue_scaled = es.eigenvalues()[0] / scale;
  return out;
}

CMatrix adjugate(const CMatrix& a) {
  const Eigen::Index n = a.rows();
  CMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1.0;
    return adj;
  }
  CMatrix minor(n - 1, n - 1);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      // minor with row r and column c removed
      for (Eigen::Index i = 0, mi = 0; i < n; ++i) {
        if (i == r) continue;
        for (Eigen::Index j = 0, mj = 0; j < n; ++j) {
          if (j == c) continue;
          minor(mi, mj++) = a(i, j);
        }
        ++mi;
      }
      const double sign = ((r + c) % 2 == 0) ? 1.0 : -1.0;
      adj(c, r) = sign * minor.determinant();
    }
  }
  return adj;
}

Complex LeviKernel::rank_identity(const CPoint& z) const {
  const double r = rho(z);
  const CVector g = grad(z);
  const CMatrix h = hessian(z);
  const Complex quad = (g.adjoint() * adjugate(h) * g)(0, 0);
  return r * h.determinant() - quad;
}

RVector LeviKernel::restricted_eigenvalues(const CPoint& z) const {
  const int n = dim();
  const CVector g = grad(z);
  if (g.norm() == 0.0) throw Error("zero gradient: Ker d rho is not a hyperplane");
  const CMatrix u = log_levi_form(z);
  if (n == 1) return RVector(0);

  // Under the identification w = conj(v), Ker d rho = {v : sum g_mu v^mu = 0}
  // is the orthogonal complement of g and the form is w^* U w.
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix basis = q.rightCols(n - 1);
  const CMatrix restricted = basis.adjoint() * u * basis;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(restricted, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

LeviData levi_data(const PolyPotential& p, const CPoint& z, double tol_rank) {
  return LeviKernel(p).data(z, tol_rank);
}

double ma_residual(const PolyPotential& p, const CPoint& z) { return LeviKernel(p).ma(z).raw; }

double rank_identity_residual(const PolyPotential& p, const CPoint& z) {
  return LeviKernel(p).rank_identity(z).real();
}

std::vector<double> restricted_levi_eigen(const PolyPotential& p, const CPoint& z) {
  const RVector ev = LeviKernel(p).restricted_eigenvalues(z);
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace mafol
