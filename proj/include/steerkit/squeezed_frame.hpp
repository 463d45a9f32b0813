#pragma once

#include <algorithm>
#include <cmath>
#include <utility>

#include "steerkit/generators.hpp"
#include "steerkit/moments.hpp"

namespace steerkit {

/// Two-mode squeezing that splits the cavities into c1 = sinh r a1^dag + cosh r a2
/// (coupled to the mechanics with strength Omega) and c2 = cosh r a1 + sinh r a2^dag
/// (decoupled). tanh r = g1 / g2, so cosh r = g2 / Omega and sinh r = g1 / Omega.
struct SqueezedFrame {
  double r = 0.0;
  double omega = 0.0;
  double occupation_c1 = 0.0;
  double occupation_c2 = 0.0;
};

inline double squeeze_parameter(double g1, double g2) {
  if (!(g1 >= 0.0) || !std::isfinite(g1) || !std::isfinite(g2)) {
    throw InvalidParams("couplings must be finite and >= 0");
  }
  if (!(g1 < g2)) throw DomainError("transformation undefined (Omega imaginary): need g1 < g2");
  return std::atanh(g1 / g2);
}

/// Maps psi to (c1, c1^dag, c2, c2^dag, b, b^dag).
inline Matrix6c squeeze_transformation(double r) {
  const double ch = std::cosh(r), sh = std::sinh(r);
  using namespace basis;
  Matrix6c t = Matrix6c::Zero();
  t(0, a1_dag) = sh;
  t(0, a2) = ch;
  t(1, a1) = sh;
  t(1, a2_dag) = ch;
  t(2, a1) = ch;
  t(2, a2_dag) = sh;
  t(3, a1_dag) = ch;
  t(3, a2) = sh;
  t(4, b) = 1.0;
  t(5, b_dag) = 1.0;
  return t;
}

struct FrameResidual {
  Matrix6c transformed_drift;  // T A T^-1
  double omega = 0.0;
  /// Largest |entry| linking (c2, c2^dag) with (c1, c1^dag, b, b^dag), either direction.
  double max_c2_coupling = 0.0;
  /// |c1 <- b| entry of the transformed drift, expected to be Omega.
  double c1_b_coupling = 0.0;
  /// Largest deviation of the four c1/b cross entries from magnitude Omega.
  double c1_b_coupling_error = 0.0;
  /// Largest deviation of the c-mode diagonal from -kappa.
  double decay_error = 0.0;
};

inline FrameResidual transformed_generator_residual(const SystemParams& params) {
  validate(params);
  if (!equal_losses(params)) throw DomainError("squeezed frame needs kappa1 == kappa2");
  const double r = squeeze_parameter(params.g1, params.g2);
  const Matrix6c t = squeeze_transformation(r);
  const Matrix6c a = build_generators(params).drift;

  FrameResidual out;
  out.omega = std::sqrt(params.g2 * params.g2 - params.g1 * params.g1);
  out.transformed_drift = t * a * t.inverse();
  const Matrix6c& m = out.transformed_drift;
  for (int i : {2, 3}) {
    for (int j : {0, 1, 4, 5}) {
      out.max_c2_coupling = std::max({out.max_c2_coupling, std::abs(m(i, j)), std::abs(m(j, i))});
    }
  }
  out.c1_b_coupling = std::abs(m(0, 4));
  for (auto [i, j] : {std::pair{0, 4}, std::pair{4, 0}, std::pair{1, 5}, std::pair{5, 1}}) {
    out.c1_b_coupling_error = std::max(out.c1_b_coupling_error, std::abs(std::abs(m(i, j)) - out.omega));
  }
  for (int i = 0; i < 4; ++i) {
    out.decay_error = std::max(out.decay_error, std::abs(m(i, i) + params.kappa1));
  }
  return out;
}

/// (<c1^dag c1>, <c2^dag c2>) from cavity moments with the steady-state structure.
inline std::pair<double, double> composite_occupations(const MomentState& m, double r) {
  const double ch = std::cosh(r), sh = std::sinh(r);
  const double cross = 2.0 * sh * ch * m.c().real();
  const double c1 = sh * sh * (m.n1() + 1.0) + ch * ch * m.n2() + cross;
  const double c2 = ch * ch * m.n1() + sh * sh * (m.n2() + 1.0) + cross;
  return {c1, c2};
}

inline SqueezedFrame squeezed_frame(const SystemParams& params, const MomentState& m) {
  SqueezedFrame f;
  f.r = squeeze_parameter(params.g1, params.g2);
  f.omega = std::sqrt(params.g2 * params.g2 - params.g1 * params.g1);
  std::tie(f.occupation_c1, f.occupation_c2) = composite_occupations(m, f.r);
  return f;
}

}  // namespace steerkit
