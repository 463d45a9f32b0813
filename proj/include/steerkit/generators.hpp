#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "steerkit/params.hpp"

namespace steerkit {

using Complex = std::complex<double>;
using Matrix6c = Eigen::Matrix<Complex, 6, 6>;
using Vector6c = Eigen::Matrix<Complex, 6, 1>;

/// Positions in the operator vector psi = (a1, a1^dag, a2, a2^dag, b, b^dag).
namespace basis {
inline constexpr int a1 = 0;
inline constexpr int a1_dag = 1;
inline constexpr int a2 = 2;
inline constexpr int a2_dag = 3;
inline constexpr int b = 4;
inline constexpr int b_dag = 5;

/// Index of the adjoint of psi_i.
constexpr int adjoint(int i) { return i ^ 1; }
}  // namespace basis

/// Linear generators of d/dt psi = A psi + sqrt(2K) psi_in with input
/// correlations <psi_in(t) psi_in(t')^T> = D delta(t - t').
struct Generators {
  Matrix6c drift;  // A
  Matrix6c rates;  // K
  Matrix6c noise;  // D

  /// Inhomogeneity 2KD of the second-moment equation.
  Matrix6c diffusion() const { return 2.0 * rates * noise; }
};

inline Generators build_generators(const SystemParams& params) {
  validate(params);
  using namespace basis;
  const Complex i{0.0, 1.0};
  const double k1 = params.kappa1, k2 = params.kappa2, gm = params.gamma_m;
  const double g1 = params.g1, g2 = params.g2;

  Generators gen;
  gen.drift.setZero();
  gen.drift(a1, a1) = -k1;
  gen.drift(a1_dag, a1_dag) = -k1;
  gen.drift(a2, a2) = -k2;
  gen.drift(a2_dag, a2_dag) = -k2;
  gen.drift(b, b) = -gm;
  gen.drift(b_dag, b_dag) = -gm;

  gen.drift(a1, b_dag) = -i * g1;
  gen.drift(a1_dag, b) = i * g1;
  gen.drift(a2, b) = -i * g2;
  gen.drift(a2_dag, b_dag) = i * g2;
  gen.drift(b, a1_dag) = -i * g1;
  gen.drift(b, a2) = -i * g2;
  gen.drift(b_dag, a1) = i * g1;
  gen.drift(b_dag, a2_dag) = i * g2;

  gen.rates.setZero();
  gen.rates.diagonal() << k1, k1, k2, k2, gm, gm;

  gen.noise.setZero();
  gen.noise(a1, a1_dag) = 1.0;
  gen.noise(a2, a2_dag) = 1.0;
  gen.noise(b, b_dag) = params.n_th + 1.0;
  gen.noise(b_dag, b) = params.n_th;
  return gen;
}

inline Eigen::Matrix<Complex, 6, 1> drift_eigenvalues(const Matrix6c& drift) {
  Eigen::ComplexEigenSolver<Matrix6c> solver(drift, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericError("eigenvalue solver failed");
  return solver.eigenvalues();
}

struct StabilityReport {
  bool analytic_pass = false;  // Routh-Hurwitz inequalities
  bool spectral_pass = false;  // every eigenvalue of A in the open left half-plane
  double max_real_eigenvalue = 0.0;
  double min_abs_real_eigenvalue = 0.0;
  double spectral_radius = 0.0;
  // LHS - RHS of the two Routh-Hurwitz inequalities; both > 0 when stable.
  double hurwitz_margin_1 = 0.0;
  double hurwitz_margin_2 = 0.0;

  bool stable() const { return spectral_pass; }
};

inline StabilityReport assess_stability(const SystemParams& params) {
  const Generators gen = build_generators(params);
  const double k1 = params.kappa1, k2 = params.kappa2, gm = params.gamma_m;
  const double g1s = params.g1 * params.g1, g2s = params.g2 * params.g2;

  StabilityReport rep;
  rep.hurwitz_margin_1 = (k2 + gm) * ((k1 + k2) * (k1 + gm) + g2s) - (k1 + gm) * g1s;
  rep.hurwitz_margin_2 = k1 * g2s - k2 * g1s + gm * k1 * k2;
  rep.analytic_pass = rep.hurwitz_margin_1 > 0.0 && rep.hurwitz_margin_2 > 0.0;

  const auto eig = drift_eigenvalues(gen.drift);
  rep.max_real_eigenvalue = -std::numeric_limits<double>::infinity();
  rep.min_abs_real_eigenvalue = std::numeric_limits<double>::infinity();
  for (int k = 0; k < eig.size(); ++k) {
    rep.max_real_eigenvalue = std::max(rep.max_real_eigenvalue, eig[k].real());
    rep.min_abs_real_eigenvalue = std::min(rep.min_abs_real_eigenvalue, std::abs(eig[k].real()));
    rep.spectral_radius = std::max(rep.spectral_radius, std::abs(eig[k]));
  }
  rep.spectral_pass = rep.max_real_eigenvalue < 0.0;
  return rep;
}

struct RwaCheck {
  std::string quantity;
  double value = 0.0;
  double ratio = 0.0;  // omega_m / value, +inf for value == 0
  bool pass = false;
};

/// Rotating-wave validity: omega_m must dominate every rate by margin_factor.
/// Diagnostic only; nothing else consults it.
struct RwaReport {
  bool assessable = false;
  double margin_factor = 10.0;
  std::vector<RwaCheck> checks;

  bool pass() const {
    return assessable &&
           std::all_of(checks.begin(), checks.end(), [](const RwaCheck& c) { return c.pass; });
  }
  double min_ratio() const {
    double r = std::numeric_limits<double>::infinity();
    for (const auto& c : checks) r = std::min(r, c.ratio);
    return r;
  }
};

inline RwaReport assess_rwa(const SystemParams& params, double margin_factor = 10.0) {
  validate(params);
  if (!(margin_factor > 1.0) || !std::isfinite(margin_factor)) {
    throw InvalidParams("RWA margin factor must be finite and > 1");
  }
  RwaReport rep;
  rep.margin_factor = margin_factor;
  if (!params.omega_m) return rep;
  rep.assessable = true;
  const double wm = *params.omega_m;
  auto add = [&](std::string name, double value) {
    RwaCheck c{std::move(name), value, 0.0, false};
    c.ratio = value > 0.0 ? wm / value : std::numeric_limits<double>::infinity();
    c.pass = c.ratio >= margin_factor;
    rep.checks.push_back(std::move(c));
  };
  add("g1", params.g1);
  add("g2", params.g2);
  add("kappa1", params.kappa1);
  add("kappa2", params.kappa2);
  add("gamma_m*n_th", params.gamma_m * params.n_th);
  return rep;
}

}  // namespace steerkit
