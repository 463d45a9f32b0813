#pragma once

#include <cmath>
#include <limits>
#include <string_view>

#include "steerkit/params.hpp"

namespace steerkit {

enum class PredicateStatus { holds, fails, not_applicable, out_of_range };

inline std::string_view to_string(PredicateStatus s) {
  switch (s) {
    case PredicateStatus::holds: return "PASS";
    case PredicateStatus::fails: return "FAIL";
    case PredicateStatus::not_applicable: return "NOT_APPLICABLE";
    case PredicateStatus::out_of_range: return "OUT_OF_RANGE";
  }
  return "?";
}

/// One closed-form inequality "lhs > rhs" (or "lhs < rhs" when less_than).
struct Inequality {
  double lhs = 0.0;
  double rhs = 0.0;
  bool less_than = false;
  PredicateStatus status = PredicateStatus::not_applicable;

  bool holds() const { return status == PredicateStatus::holds; }
  bool evaluated() const {
    return status == PredicateStatus::holds || status == PredicateStatus::fails;
  }
};

/// Closed-form conditions for steady steering and entanglement.
///   s12_oneway_weak / s21_oneway_weak: S12 < 1 / S21 < 1 at gamma_m -> 0, n_th = 0.
///   entangled_weak: steady entanglement at gamma_m -> 0.
///   s21_cond_strong: S21 < 1 at equal losses, n_th = 0 (needs g2 > g1).
///   s12_cond_strong: S12 < 1 at equal losses for gamma_m >> kappa (needs Omega^2 > 8 kappa^2,
///     evaluated only for gamma_m >= 5 kappa).
struct RegimePredicates {
  Inequality s12_oneway_weak;
  Inequality s21_oneway_weak;
  Inequality entangled_weak;
  Inequality s21_cond_strong;
  Inequality s12_cond_strong;
  double omega = std::numeric_limits<double>::quiet_NaN();  // sqrt(g2^2 - g1^2) when real
};

/// gamma_m threshold above which the strong-damping S12 formula is consulted.
inline constexpr double kStrongDampingFactor = 5.0;

inline RegimePredicates regime_predicates(const SystemParams& params) {
  validate(params);
  const double k1 = params.kappa1, k2 = params.kappa2, gm = params.gamma_m;
  const double g1s = params.g1 * params.g1, g2s = params.g2 * params.g2;
  auto judge = [](Inequality& q) {
    const bool ok = q.less_than ? q.lhs < q.rhs : q.lhs > q.rhs;
    q.status = ok ? PredicateStatus::holds : PredicateStatus::fails;
  };

  RegimePredicates out;
  const double imbalance = k2 * g2s - k1 * g1s;
  const double floor = k1 * k2 * (k1 + k2) * (k1 + k2);
  out.s12_oneway_weak = {(k1 - k2) * imbalance, floor};
  out.s21_oneway_weak = {(k2 - k1) * imbalance, floor};
  out.entangled_weak = {imbalance, 0.0};
  judge(out.s12_oneway_weak);
  judge(out.s21_oneway_weak);
  judge(out.entangled_weak);

  if (!equal_losses(params) || !(params.g2 > params.g1)) return out;
  const double kappa = k1;
  const double omega_sq = g2s - g1s;
  out.omega = std::sqrt(omega_sq);

  // gamma/kappa > 1 / [(Omega/2kappa)^2 - 1], kept in the multiplied form so a
  // non-positive bracket means the condition cannot be met.
  const double bracket = omega_sq / (4.0 * kappa * kappa) - 1.0;
  Inequality& s21 = out.s21_cond_strong;
  s21.lhs = gm / kappa;
  s21.rhs = bracket > 0.0 ? 1.0 / bracket : std::numeric_limits<double>::infinity();
  s21.status = gm * bracket > kappa ? PredicateStatus::holds : PredicateStatus::fails;

  Inequality& s12 = out.s12_cond_strong;
  s12.less_than = true;
  s12.lhs = gm / kappa;
  if (omega_sq > 8.0 * kappa * kappa) {
    s12.rhs = (params.g2 * std::sqrt(omega_sq - 8.0 * kappa * kappa) - omega_sq) /
              (2.0 * kappa * kappa);
    if (gm >= kStrongDampingFactor * kappa) {
      judge(s12);
    } else {
      s12.status = PredicateStatus::out_of_range;
    }
  }
  return out;
}

}  // namespace steerkit
