#pragma once

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "steerkit/generators.hpp"

namespace steerkit {

/// Second moments Phi = <psi psi^T> of the three-mode state. Named scalars are
/// always read back from Phi.
class MomentState {
 public:
  MomentState() : phi_(Matrix6c::Zero()) {}
  explicit MomentState(const Matrix6c& phi) : phi_(phi) {}

  const Matrix6c& phi() const { return phi_; }

  double n1() const { return phi_(basis::a1_dag, basis::a1).real(); }
  double n2() const { return phi_(basis::a2_dag, basis::a2).real(); }
  double nm() const { return phi_(basis::b_dag, basis::b).real(); }
  Complex c() const { return phi_(basis::a1, basis::a2); }
  Complex d1() const { return phi_(basis::a1, basis::a1); }
  Complex d2() const { return phi_(basis::a2, basis::a2); }
  Complex x12() const { return phi_(basis::a1, basis::a2_dag); }

  /// Cavities in vacuum, mechanics thermal at n_th.
  static MomentState vacuum_thermal(double n_th) {
    Matrix6c phi = Matrix6c::Zero();
    phi(basis::a1, basis::a1_dag) = 1.0;
    phi(basis::a2, basis::a2_dag) = 1.0;
    phi(basis::b, basis::b_dag) = n_th + 1.0;
    phi(basis::b_dag, basis::b) = n_th;
    return MomentState(phi);
  }

  /// Largest violation of the operator structure every Phi must have:
  /// Phi_ij - Phi_ji = [psi_i, psi_j] and conj(Phi_ij) = Phi_{j+, i+}.
  double structure_defect() const {
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        worst = std::max(worst, std::abs(phi_(i, j) - phi_(j, i) - commutator(i, j)));
        worst = std::max(worst, std::abs(std::conj(phi_(i, j)) -
                                         phi_(basis::adjoint(j), basis::adjoint(i))));
      }
    }
    return worst;
  }

  /// [psi_i, psi_j] for the mode ordering of basis.
  static double commutator(int i, int j) {
    if (i / 2 != j / 2 || i == j) return 0.0;
    return (i % 2 == 0) ? 1.0 : -1.0;
  }

 private:
  Matrix6c phi_;
};

/// Symmetrized covariance of (X1, Y1, X2, Y2) with X = (a + a^dag)/sqrt2,
/// Y = -i(a - a^dag)/sqrt2, so vacuum has sigma = identity / 2.
struct CorrelationMatrix {
  Eigen::Matrix4d sigma = Eigen::Matrix4d::Identity() / 2.0;

  Eigen::Matrix2d block1() const { return sigma.block<2, 2>(0, 0); }
  Eigen::Matrix2d block2() const { return sigma.block<2, 2>(2, 2); }
  Eigen::Matrix2d block3() const { return sigma.block<2, 2>(0, 2); }

  /// Smallest eigenvalue of sigma + (i/2) Omega; a state is physical iff it is >= 0.
  double uncertainty_margin() const {
    Eigen::Matrix4cd m = sigma.cast<Complex>();
    const Complex half_i{0.0, 0.5};
    for (int mode = 0; mode < 2; ++mode) {
      m(2 * mode, 2 * mode + 1) += half_i;
      m(2 * mode + 1, 2 * mode) -= half_i;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
  }
};

inline CorrelationMatrix to_correlation_matrix(const MomentState& moments) {
  const Complex i{0.0, 1.0};
  // sqrt2 xi = Q (a1, a1^dag, a2, a2^dag); the 1/sqrt2 factors are applied once at the end
  Eigen::Matrix4cd q = Eigen::Matrix4cd::Zero();
  for (int mode = 0; mode < 2; ++mode) {
    q(2 * mode, 2 * mode) = 1.0;
    q(2 * mode, 2 * mode + 1) = 1.0;
    q(2 * mode + 1, 2 * mode) = -i;
    q(2 * mode + 1, 2 * mode + 1) = i;
  }
  const Eigen::Matrix4cd cav = moments.phi().block<4, 4>(0, 0);
  const Eigen::Matrix4cd raw = q * cav * q.transpose();
  CorrelationMatrix out;
  out.sigma = (0.25 * (raw + raw.transpose())).real();
  return out;
}

/// Scaled-convention correlation matrix built directly from (n1, n2, c) with
/// the steady-state structure (no single-mode squeezing, no x12).
inline CorrelationMatrix correlation_from_scalars(double n1, double n2, Complex c) {
  CorrelationMatrix out;
  out.sigma.setZero();
  out.sigma(0, 0) = out.sigma(1, 1) = n1 + 0.5;
  out.sigma(2, 2) = out.sigma(3, 3) = n2 + 0.5;
  out.sigma(0, 2) = out.sigma(2, 0) = c.real();
  out.sigma(1, 3) = out.sigma(3, 1) = -c.real();
  out.sigma(0, 3) = out.sigma(3, 0) = c.imag();
  out.sigma(1, 2) = out.sigma(2, 1) = c.imag();
  return out;
}

}  // namespace steerkit
