#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

#include "steerkit/moments.hpp"

namespace steerkit {

enum class Classification { no_steering, one_way_2_steers_1, one_way_1_steers_2, two_way };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::no_steering: return "no-steering";
    case Classification::one_way_2_steers_1: return "one-way-2-steers-1";
    case Classification::one_way_1_steers_2: return "one-way-1-steers-2";
    case Classification::two_way: return "two-way";
  }
  return "?";
}

/// Products of inferred variances in the unscaled quadrature convention
/// (X = a + a^dag), where steering means a value strictly below 1.
/// s12 < 1: field 2 steers field 1. s21 < 1: field 1 steers field 2.
struct SteeringProducts {
  double s12 = 1.0;
  double s21 = 1.0;
};

struct SteeringResult {
  double s12 = 1.0;
  double s21 = 1.0;
  double e_n = 0.0;
  Classification classification = Classification::no_steering;
};

/// Products within this distance below 1 are rounding noise, not steering.
inline constexpr double kSteeringFloor = 1e-12;

inline Classification classify(double s12, double s21, double /*e_n*/ = 0.0) {
  const bool steer21 = s12 < 1.0 - kSteeringFloor;
  const bool steer12 = s21 < 1.0 - kSteeringFloor;
  if (steer21 && steer12) return Classification::two_way;
  if (steer21) return Classification::one_way_2_steers_1;
  if (steer12) return Classification::one_way_1_steers_2;
  return Classification::no_steering;
}

/// Rotates mode-2 quadratures so the cross block [[Re c, Im c], [Im c, -Re c]]
/// becomes diag(|c|, -|c|) up to sign; identity for real c.
inline CorrelationMatrix align_cross_correlation(const CorrelationMatrix& in) {
  const Eigen::Matrix2d c3 = in.block3();
  const double phi = std::atan2(0.5 * (c3(0, 1) + c3(1, 0)), 0.5 * (c3(0, 0) - c3(1, 1)));
  // Keep real negative c where it is (phi = pi would flip both signs for nothing).
  const double theta = std::abs(phi) > std::numbers::pi / 2.0 ? phi - std::copysign(std::numbers::pi, phi) : phi;
  if (theta == 0.0) return in;
  Eigen::Matrix2d rot;
  rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
  r.block<2, 2>(2, 2) = rot;
  CorrelationMatrix out;
  out.sigma = r.transpose() * in.sigma * r;
  return out;
}

/// S12 and S21 from the general inferred variance
/// V_inf[O1] = V[O1] - V(O1, O2)^2 / V[O2], pairing X1 with X2 and Y1 with Y2.
inline SteeringProducts steering_products(const CorrelationMatrix& sigma_in) {
  const CorrelationMatrix aligned = align_cross_correlation(sigma_in);
  // Unscaled variances are twice the scaled ones.
  const Eigen::Matrix4d v = 2.0 * aligned.sigma;
  for (int k = 0; k < 4; ++k) {
    if (!(v(k, k) > 0.0)) throw NumericError("degenerate conditioning: zero quadrature variance");
  }
  auto inferred = [&](int target, int probe) {
    return v(target, target) - v(target, probe) * v(target, probe) / v(probe, probe);
  };
  SteeringProducts out;
  out.s12 = inferred(0, 2) * inferred(1, 3);
  out.s21 = inferred(2, 0) * inferred(3, 1);
  return out;
}

/// Same products evaluated from (n1, n2, |c|) for states with the steady-state
/// structure d1 = d2 = x12 = 0.
inline SteeringProducts steering_products_reduced(const MomentState& m) {
  constexpr double kStructureTol = 1e-8;
  if (std::abs(m.d1()) > kStructureTol || std::abs(m.d2()) > kStructureTol ||
      std::abs(m.x12()) > kStructureTol) {
    throw DomainError("reduced steering criteria need <a1^2> = <a2^2> = <a1 a2^dag> = 0");
  }
  const double v1 = 2.0 * m.n1() + 1.0;
  const double v2 = 2.0 * m.n2() + 1.0;
  const double cc = 4.0 * std::norm(m.c());
  const double inf1 = v1 - cc / v2;
  const double inf2 = v2 - cc / v1;
  return {inf1 * inf1, inf2 * inf2};
}

/// Values below this are rounding noise of a separable state.
inline constexpr double kNegativityFloor = 1e-12;

/// E_N = max(0, -ln(2 lambda)) with lambda the smallest symplectic eigenvalue
/// of the partially transposed sigma (scaled convention).
inline double logarithmic_negativity(const CorrelationMatrix& s) {
  const double det1 = s.block1().determinant();
  const double det2 = s.block2().determinant();
  const double det3 = s.block3().determinant();
  const double det = s.sigma.determinant();
  const double big_sigma = det1 + det2 - 2.0 * det3;
  double disc = big_sigma * big_sigma - 4.0 * det;
  const double scale = std::max(1.0, big_sigma * big_sigma);
  if (disc < -1e-12 * scale) throw NumericError("unphysical correlation matrix: negative discriminant");
  if (det < -1e-12 * scale) throw NumericError("unphysical correlation matrix: negative determinant");
  disc = std::max(disc, 0.0);
  // lambda^2 = (Sigma - sqrt(disc)) / 2 = 2 det / (Sigma + sqrt(disc))
  const double root = std::sqrt(disc);
  const double lambda_sq = big_sigma > 0.0 ? 2.0 * std::max(det, 0.0) / (big_sigma + root)
                                           : 0.5 * (big_sigma - root);
  if (!(lambda_sq > 0.0)) throw NumericError("unphysical correlation matrix: lambda <= 0");
  const double e_n = -0.5 * std::log(4.0 * lambda_sq);
  return e_n > kNegativityFloor ? e_n : 0.0;
}

inline SteeringResult evaluate_steering(const CorrelationMatrix& sigma) {
  const SteeringProducts p = steering_products(sigma);
  SteeringResult r;
  r.s12 = p.s12;
  r.s21 = p.s21;
  r.e_n = logarithmic_negativity(sigma);
  r.classification = classify(r.s12, r.s21, r.e_n);
  return r;
}

inline SteeringResult evaluate_steering(const MomentState& moments) {
  return evaluate_steering(to_correlation_matrix(moments));
}

}  // namespace steerkit
