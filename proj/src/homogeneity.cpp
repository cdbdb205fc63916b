#include "mafol/homogeneity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace mafol {

WeightVector::WeightVector(RVector weights) : c_(std::move(weights)) {
  if ((c_.array() <= 0.0).any()) throw Error("weights must be positive");
}

std::string WeightEquation::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    if (!out.empty()) out += "+";
    if (coeffs[j] != 1) out += std::to_string(coeffs[j]);
    out += "c" + std::to_string(j + 1);
  }
  if (out.empty()) out = "0";
  return out + "=1";
}

namespace {

constexpr double kFeasibilityTol = 1e-9;

Eigen::MatrixXd system_matrix(std::span<const WeightEquation> eqs, int n) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(eqs.size()), n);
  for (std::size_t r = 0; r < eqs.size(); ++r) {
    for (int j = 0; j < n; ++j) a(static_cast<Eigen::Index>(r), j) = eqs[r].coeffs[j];
  }
  return a;
}

struct LsResult {
  RVector c;
  int rank = 0;
  double residual = 0.0;
};

LsResult solve(std::span<const WeightEquation> eqs, int n) {
  LsResult out;
  if (eqs.empty()) {
    out.c = RVector::Zero(n);
    return out;
  }
  const Eigen::MatrixXd a = system_matrix(eqs, n);
  const RVector ones = RVector::Ones(a.rows());
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
  out.c = cod.solve(ones);
  out.rank = static_cast<int>(cod.rank());
  out.residual = (a * out.c - ones).cwiseAbs().maxCoeff();
  return out;
}

bool consistent(std::span<const WeightEquation> eqs, int n) {
  return solve(eqs, n).residual <= kFeasibilityTol;
}

}  // namespace

WeightSolution find_weights(const PolyPotential& p) {
  const int n = p.dim();
  std::set<WeightEquation> unique_rows;
  for (const auto& [key, c] : p.terms()) {
    const auto za = key.z_exp.entries();
    const auto zb = key.zbar_exp.entries();
    unique_rows.insert({std::vector<int>(za.begin(), za.end())});
    unique_rows.insert({std::vector<int>(zb.begin(), zb.end())});
  }

  WeightSolution sol;
  sol.equations.assign(unique_rows.begin(), unique_rows.end());
  // Display order: by total degree, then c1-heavy rows first.
  std::sort(sol.equations.begin(), sol.equations.end(), [](const auto& a, const auto& b) {
    const int ta = std::accumulate(a.coeffs.begin(), a.coeffs.end(), 0);
    const int tb = std::accumulate(b.coeffs.begin(), b.coeffs.end(), 0);
    if (ta != tb) return ta < tb;
    return a.coeffs > b.coeffs;
  });
  const LsResult ls = solve(sol.equations, n);
  sol.raw = ls.c;
  sol.rank = ls.rank;
  sol.residual = ls.residual;
  sol.unique = ls.rank == n;

  if (ls.residual > kFeasibilityTol) {
    sol.status = WeightStatus::Infeasible;
    // Deletion filter: drop every equation whose removal keeps the rest
    // inconsistent. What remains is a minimal inconsistent subset.
    std::vector<WeightEquation> core = sol.equations;
    for (std::size_t k = 0; k < core.size();) {
      std::vector<WeightEquation> trial = core;
      trial.erase(trial.begin() + static_cast<std::ptrdiff_t>(k));
      if (!consistent(trial, n)) {
        core = std::move(trial);
      } else {
        ++k;
      }
    }
    sol.inconsistent = std::move(core);
    return sol;
  }

  if (ls.c.size() > 0 && (ls.c.array() > 0.0).all()) {
    sol.status = WeightStatus::Found;
    sol.weights.emplace(ls.c);
  } else {
    sol.status = WeightStatus::NotPositive;
  }
  return sol;
}

namespace {

CPoint scaled(const CPoint& z, const WeightVector& c, Complex lambda) {
  CPoint w = z;
  for (int j = 0; j < c.size(); ++j) w[j] *= std::exp(c[j] * lambda);
  return w;
}

}  // namespace

double verify_weights(const PolyPotential& p, const WeightVector& c,
                      std::span<const CPoint> z_samples, std::span<const Complex> lambdas) {
  if (c.size() != p.dim()) throw DimensionError("weight vector length does not match n");
  double worst = 0.0;
  for (const CPoint& z : z_samples) {
    const double r = evaluate(p, z);
    if (!(r > 0.0)) throw DomainError("verify_weights: sample outside M_*");
    for (Complex lambda : lambdas) {
      const double expected = std::exp(2.0 * lambda.real()) * r;
      worst = std::max(worst, std::abs(evaluate(p, scaled(z, c, lambda)) - expected) / r);
    }
  }
  return worst;
}

double linear_field_agreement(const PolyPotential& p, const WeightVector& c,
                              std::span<const CPoint> z_samples, Execution exec) {
  if (c.size() != p.dim()) throw DimensionError("weight vector length does not match n");
  const GradientKernel kernel(p);
  std::vector<double> err(z_samples.size(), 0.0);
  for_each_index(z_samples.size(), exec, [&](std::size_t k) {
    const CPoint& z = z_samples[k];
    const CVector linear = c.values().cast<Complex>().cwiseProduct(z);
    err[k] = (kernel.extended(z).field - linear).norm();
  });
  return err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
}

double flow_level_map_check(const PolyPotential& p, double r1, double r2,
                            std::span<const CPoint> boundary_samples, const IntegratorConfig& cfg,
                            Execution exec) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw Error("flow_level_map_check: levels must be positive");
  const GradientKernel kernel(p);
  for (const CPoint& z : boundary_samples) {
    if (std::abs(kernel.levi().rho(z) - r1) > 1e-8 * r1) {
      throw Error("flow_level_map_check: sample is not on the level set rho = r1");
    }
  }
  const double duration = std::log(r2 / r1) / kKappa;
  const VelocityField x_field = kernel.velocity_field(RealFieldKind::X);
  std::vector<double> err(boundary_samples.size(), 0.0);
  for_each_index(boundary_samples.size(), exec, [&](std::size_t k) {
    try {
      const CPoint end = integrate(x_field, boundary_samples[k], duration, cfg.step);
      err[k] = std::abs(kernel.levi().rho(end) - r2) / r2;
    } catch (const DomainError& e) {
      throw IntegrationError(std::string("X flow left M_*: ") + e.what());
    }
  });
  return err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
}

std::vector<Complex> default_lambdas() {
  return {{1.0, 0.0}, {0.0, 1.0},  {1.0, 1.0},   {-0.5, 0.0},
          {0.0, -2.0}, {0.3, -0.7}, {-1.0, 2.5}, {0.0, 3.14159}};
}

}  // namespace mafol
