#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "steerkit/errors.hpp"

namespace steerkit {

/// Effective rates of the three-mode model. Any consistent unit works; the
/// CLI uses kappa1 = 1 as the unit.
struct SystemParams {
  double kappa1 = 1.0;
  double kappa2 = 1.0;
  double g1 = 0.0;       // downconversion coupling (cavity 1 <-> mechanics)
  double g2 = 0.0;       // beam-splitter coupling (cavity 2 <-> mechanics)
  double gamma_m = 0.0;  // mechanical damping
  double n_th = 0.0;     // thermal phonon number of the mechanical bath
  std::optional<double> omega_m;  // only used by the RWA diagnostic
};

enum class Param { kappa1, kappa2, g1, g2, gamma_m, n_th };

inline constexpr std::array<Param, 6> kAllParams{Param::kappa1, Param::kappa2, Param::g1,
                                                 Param::g2,     Param::gamma_m, Param::n_th};

inline std::string_view to_string(Param p) {
  switch (p) {
    case Param::kappa1: return "kappa1";
    case Param::kappa2: return "kappa2";
    case Param::g1: return "g1";
    case Param::g2: return "g2";
    case Param::gamma_m: return "gamma_m";
    case Param::n_th: return "n_th";
  }
  return "?";
}

inline std::optional<Param> parse_param(std::string_view name) {
  for (Param p : kAllParams) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

inline double get(const SystemParams& params, Param p) {
  switch (p) {
    case Param::kappa1: return params.kappa1;
    case Param::kappa2: return params.kappa2;
    case Param::g1: return params.g1;
    case Param::g2: return params.g2;
    case Param::gamma_m: return params.gamma_m;
    case Param::n_th: return params.n_th;
  }
  return 0.0;
}

inline void set(SystemParams& params, Param p, double value) {
  switch (p) {
    case Param::kappa1: params.kappa1 = value; break;
    case Param::kappa2: params.kappa2 = value; break;
    case Param::g1: params.g1 = value; break;
    case Param::g2: params.g2 = value; break;
    case Param::gamma_m: params.gamma_m = value; break;
    case Param::n_th: params.n_th = value; break;
  }
}

/// Throws InvalidParams unless kappa_j > 0 and every other rate is finite and >= 0.
inline void validate(const SystemParams& params) {
  for (Param p : kAllParams) {
    const double v = get(params, p);
    if (!std::isfinite(v)) {
      throw InvalidParams(std::string(to_string(p)) + " is not finite");
    }
    if (v < 0.0) throw InvalidParams(std::string(to_string(p)) + " must be >= 0");
  }
  if (params.kappa1 <= 0.0) throw InvalidParams("kappa1 must be > 0");
  if (params.kappa2 <= 0.0) throw InvalidParams("kappa2 must be > 0");
  if (params.omega_m && (!std::isfinite(*params.omega_m) || *params.omega_m <= 0.0)) {
    throw InvalidParams("omega_m must be finite and > 0");
  }
}

/// Relative equality used by the equal-loss formulas.
inline bool equal_losses(const SystemParams& params, double rel_tol = 1e-12) {
  return std::abs(params.kappa1 - params.kappa2) <=
         rel_tol * std::max(params.kappa1, params.kappa2);
}

}  // namespace steerkit
