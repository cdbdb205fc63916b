#pragma once

// Weighted homogeneity rho(e^{c_1 l} z^1, ..., e^{c_n l} z^n) = |e^l|^2 rho(z)
// for all complex l: recovery of the weights c from the monomial exponents,
// and numerical checks of its consequences.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mafol/foliation.hpp"

namespace mafol {

/// Positive weights (c_1, ..., c_n).
class WeightVector {
 public:
  explicit WeightVector(RVector weights);
  const RVector& values() const noexcept { return c_; }
  int size() const noexcept { return static_cast<int>(c_.size()); }
  double operator[](int j) const { return c_[j]; }

 private:
  RVector c_;
};

/// One linear condition sum_j coeffs[j] c_j = 1 contributed by a monomial.
struct WeightEquation {
  std::vector<int> coeffs;
  std::string to_string() const;  // e.g. "c1+2c2=1"
  auto operator<=>(const WeightEquation&) const = default;
};

enum class WeightStatus { Found, NotPositive, Infeasible };

struct WeightSolution {
  WeightStatus status = WeightStatus::Infeasible;
  std::optional<WeightVector> weights;  // set iff status == Found
  RVector raw;                          // least-squares solution of the system
  bool unique = false;                  // coefficient matrix has rank n
  int rank = 0;
  double residual = 0.0;                // max |A c - 1|
  std::vector<WeightEquation> equations;
  /// Minimal inconsistent subset when status == Infeasible.
  std::vector<WeightEquation> inconsistent;
};

/// Each stored monomial (a, b) contributes sum c_j a_j = 1 and sum c_j b_j = 1.
/// The minimum-norm solution is returned; positivity is checked afterwards.
WeightSolution find_weights(const PolyPotential& p);

/// Max |rho(e^{c_j l} z^j) - |e^l|^2 rho(z)| / rho(z) over samples and l.
double verify_weights(const PolyPotential& p, const WeightVector& c,
                      std::span<const CPoint> z_samples, std::span<const Complex> lambdas);

/// Max ||Z_ext(z) - (c_1 z^1, ..., c_n z^n)|| over samples.
double linear_field_agreement(const PolyPotential& p, const WeightVector& c,
                              std::span<const CPoint> z_samples,
                              Execution exec = Execution::Parallel);

/// Flows each sample of {rho = r1} along X for log(r2/r1)/kKappa and returns
/// max |rho(end) - r2| / r2. Samples off the level set (relative 1e-8) throw.
double flow_level_map_check(const PolyPotential& p, double r1, double r2,
                            std::span<const CPoint> boundary_samples,
                            const IntegratorConfig& cfg = {},
                            Execution exec = Execution::Parallel);

/// Default complex scalings for verify_weights; includes purely imaginary
/// values, which detect an asymmetry between z and zbar exponents.
std::vector<Complex> default_lambdas();

}  // namespace mafol
