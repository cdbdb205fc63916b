#pragma once

// Point-wise Levi-form data for a polynomial potential rho: the complex
// Hessian, the Monge-Ampere determinant of u = log rho, degeneracy strata and
// the restricted Levi eigenvalues.
//
// Normalization: the Levi form is the plain matrix of mixed Wirtinger
// derivatives H(mu, nu) = d^2 rho / dz^mu dzbar^nu. No i/2pi or 1/4 factors
// are applied anywhere; only vanishing and sign statements are meaningful.

#include <string_view>
#include <vector>

#include "mafol/potential.hpp"

namespace mafol {

inline constexpr double kDefaultTolRank = 1e-8;

enum class Stratum {
  StrictlyPsh,    // P: rank n
  LowDegeneracy,  // P_{n-1} \ P: rank n-1
  Weak,           // W: rank <= n-2
  OutsideDomain,  // rho <= 0
};

std::string_view to_string(Stratum s);

/// Number of eigenvalues with |lambda| > tol_rank * max(1, max |lambda|).
int numerical_rank(const RVector& eigenvalues, double tol_rank);

Stratum classify(double rho, int rank, int n);

struct LeviData {
  CPoint point;
  double rho = 0.0;
  CVector grad;      // rho_mu = d rho / dz^mu
  CMatrix hessian;   // rho_{mu nubar}, Hermitian by construction
  Complex det_h;
  RVector eigenvalues;  // ascending
  int rank = 0;
  Stratum stratum = Stratum::OutsideDomain;
};

/// Monge-Ampere determinant of U = H/rho - g g^* / rho^2, the Levi form of
/// log rho. `scaled` divides by max(1, ||U||_F)^n for comparison across
/// potentials and scales.
struct MaResidual {
  Complex det_u;
  double raw = 0.0;
  double scaled = 0.0;
  double min_eigenvalue_scaled = 0.0;  // lambda_min(U) / max(1, ||U||_F)
};

/// Symbolic first and mixed second derivatives of a potential, computed once
/// and evaluated at many points. Immutable; safe to share across threads.
class LeviKernel {
 public:
  explicit LeviKernel(PolyPotential p);

  int dim() const noexcept { return p_.dim(); }
  const PolyPotential& potential() const noexcept { return p_; }

  double rho(const CPoint& z) const;
  CVector grad(const CPoint& z) const;
  /// Upper triangle evaluated, lower triangle mirrored, diagonal kept real.
  CMatrix hessian(const CPoint& z) const;

  LeviData data(const CPoint& z, double tol_rank = kDefaultTolRank) const;

  /// U = H/rho - g g^*/rho^2. Throws DomainError if rho(z) <= 0.
  CMatrix log_levi_form(const CPoint& z) const;
  MaResidual ma(const CPoint& z) const;

  /// rho det H - g^* adj(H) g, with the adjugate built from cofactors. Equal
  /// to rho^{n+1} det U by the matrix determinant lemma.
  Complex rank_identity(const CPoint& z) const;

  /// Eigenvalues of U restricted to Ker d rho, ascending (n-1 values).
  RVector restricted_eigenvalues(const CPoint& z) const;

 private:
  PolyPotential p_;
  std::vector<PolyExpr> dz_;      // rho_mu
  std::vector<PolyExpr> dzdzb_;   // rho_{mu nubar}, mu <= nu, row-major upper
};

/// Cofactor adjugate: A adj(A) = det(A) I for every square A, singular or not.
CMatrix adjugate(const CMatrix& a);

LeviData levi_data(const PolyPotential& p, const CPoint& z, double tol_rank = kDefaultTolRank);
double ma_residual(const PolyPotential& p, const CPoint& z);
double rank_identity_residual(const PolyPotential& p, const CPoint& z);
std::vector<double> restricted_levi_eigen(const PolyPotential& p, const CPoint& z);

}  // namespace mafol
