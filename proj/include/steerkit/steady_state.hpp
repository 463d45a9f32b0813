#pragma once

#include <cmath>
#include <optional>
#include <sstream>

#include <Eigen/Dense>

#include "steerkit/generators.hpp"
#include "steerkit/moments.hpp"

namespace steerkit {

/// Raised when the drift matrix has an eigenvalue with Re >= 0.
class NoSteadyState : public Error {
 public:
  explicit NoSteadyState(const StabilityReport& report)
      : Error(describe(report)), report_(report) {}
  const StabilityReport& report() const { return report_; }

 private:
  static std::string describe(const StabilityReport& r) {
    std::ostringstream os;
    os << "no steady state: max Re(eig A) = " << r.max_real_eigenvalue
       << ", Routh-Hurwitz " << (r.analytic_pass ? "pass" : "fail") << " (margins "
       << r.hurwitz_margin_1 << ", " << r.hurwitz_margin_2 << ")";
    return os.str();
  }
  StabilityReport report_;
};

namespace detail {

/// Operator X -> A X + X A^T acting on column-major vec(X).
inline Eigen::MatrixXcd sylvester_operator(const Matrix6c& a) {
  Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(36, 36);
  for (int col = 0; col < 6; ++col) {
    for (int row = 0; row < 6; ++row) {
      const int out = row + 6 * col;
      for (int k = 0; k < 6; ++k) {
        op(out, k + 6 * col) += a(row, k);  // (A X)_{row,col}
        op(out, row + 6 * k) += a(col, k);  // (X A^T)_{row,col}
      }
    }
  }
  return op;
}

inline Eigen::VectorXcd vec(const Matrix6c& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), 36);
}

inline Matrix6c unvec(const Eigen::VectorXcd& v) { return Eigen::Map<const Matrix6c>(v.data()); }

}  // namespace detail

/// Solves A X + X A^T + Q = 0 by dense LU on the 36x36 vectorized system, with
/// up to three rounds of iterative refinement. Throws NumericError if the
/// normwise backward error |R| / (2 |A| |X| + |Q|) stays above rel_tol.
inline Matrix6c solve_lyapunov(const Matrix6c& a, const Matrix6c& q, double rel_tol = 1e-10) {
  const Eigen::MatrixXcd op = detail::sylvester_operator(a);
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(op);
  const Eigen::VectorXcd rhs = -detail::vec(q);
  Eigen::VectorXcd x = lu.solve(rhs);
  auto backward_error = [&](const Eigen::VectorXcd& v, double& residual, double& scale) {
    const Matrix6c sol = detail::unvec(v);
    residual = (a * sol + sol * a.transpose() + q).norm();
    scale = 2.0 * a.norm() * sol.norm() + q.norm();
    return scale > 0.0 ? residual / scale : 0.0;
  };
  double residual = 0.0, scale = 0.0;
  for (int round = 0; round < 3 && backward_error(x, residual, scale) > 0.1 * rel_tol; ++round) {
    x += lu.solve(rhs - op * x);
  }
  const Matrix6c sol = detail::unvec(x);
  if (backward_error(x, residual, scale) > rel_tol || !sol.allFinite()) {
    std::ostringstream os;
    os << "Lyapunov residual " << residual << " exceeds " << rel_tol << " x " << scale;
    throw NumericError(os.str());
  }
  return sol;
}

/// Steady second moments from A Phi + Phi A^T + 2KD = 0. This is the reference
/// route for every moment in the toolkit.
inline MomentState steady_state_lyapunov(const SystemParams& params) {
  const StabilityReport rep = assess_stability(params);
  if (!rep.spectral_pass) throw NoSteadyState(rep);
  const Generators gen = build_generators(params);
  return MomentState(solve_lyapunov(gen.drift, gen.diffusion()));
}

enum class ClosedFormStatus { available, unavailable_thermal };

/// Closed-form steady occupations and cavity cross-correlation.
struct ClosedFormMoments {
  double n1 = 0.0;
  double n2 = 0.0;
  /// Printed closed form of <a1 a2>; only trusted at n_th = 0.
  std::optional<double> c;
  ClosedFormStatus c_status = ClosedFormStatus::available;
  /// <a1 a2> with the thermal term multiplied by g1 g2, valid for any n_th.
  double c_corrected = 0.0;
};

inline ClosedFormMoments steady_state_closed_form(const SystemParams& params) {
  const StabilityReport rep = assess_stability(params);
  if (!rep.spectral_pass) throw NoSteadyState(rep);

  const double k1 = params.kappa1, k2 = params.kappa2, gm = params.gamma_m, n = params.n_th;
  const double g1 = params.g1, g2 = params.g2;
  const double g1s = g1 * g1, g2s = g2 * g2;
  const double net = k1 * g2s - k2 * g1s;  // recurring combination
  const double den = (net + gm * k1 * k2) *
                     ((k2 + gm) * g2s - (k1 + gm) * g1s + (k1 + k2) * (k1 + gm) * (k2 + gm));

  ClosedFormMoments out;
  out.n1 = (k2 * (k1 + k2 + gm) * g1s * g2s +
            gm * (n + 1.0) * (net + k2 * (k1 + k2) * (k2 + gm)) * g1s) /
           den;
  out.n2 = (k1 * (k1 + k2 + gm) * g1s * g2s + gm * n * (net + k1 * (k1 + k2) * (k1 + gm)) * g2s) /
           den;

  const double coherent = k1 * g1 * g2 * (k2 * g1s + (k2 + gm) * (g2s + k2 * gm));
  const double thermal = gm * n * (net + k1 * k2 * (k1 + k2 + 2.0 * gm));
  out.c_corrected = -(coherent + g1 * g2 * thermal) / den;
  if (n == 0.0) {
    out.c = -(coherent + thermal) / den;
  } else {
    out.c_status = ClosedFormStatus::unavailable_thermal;
  }
  return out;
}

}  // namespace steerkit
