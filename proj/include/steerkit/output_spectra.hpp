#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "steerkit/generators.hpp"
#include "steerkit/parallel.hpp"
#include "steerkit/steady_state.hpp"

namespace steerkit {

/// Output-field response at one frequency:
///   a1_out[w] =  m11 a1_in[w] + m12 a2_in^dag[-w] + m1b b_in^dag[-w]
///   a2_out[w] = -m12 a1_in^dag[-w] + m22 a2_in[w] + m2b b_in[w]
struct TransferMatrix {
  Complex m11, m12, m1b, m22, m2b;
};

inline TransferMatrix transfer_matrix(const SystemParams& params, double omega) {
  validate(params);
  const Complex iw{0.0, omega};
  const double k1 = params.kappa1, k2 = params.kappa2, gm = params.gamma_m;
  const double g1 = params.g1, g2 = params.g2;
  const double g1s = g1 * g1, g2s = g2 * g2;
  const Complex den = (k1 - iw) * g2s - (k2 - iw) * g1s + (k1 - iw) * (k2 - iw) * (gm - iw);
  if (std::abs(den) < 1e-14) throw NumericError("transfer-function denominator vanishes");

  const Complex i{0.0, 1.0};
  TransferMatrix m;
  m.m11 = ((k1 + iw) * g2s + (k2 - iw) * g1s + (k1 + iw) * (k2 - iw) * (gm - iw)) / den;
  m.m12 = 2.0 * std::sqrt(k1 * k2) * g1 * g2 / den;
  m.m1b = -2.0 * i * std::sqrt(k1 * gm) * g1 * (k2 - iw) / den;
  m.m22 = -((k1 - iw) * g2s + (k2 + iw) * g1s - (k1 - iw) * (k2 + iw) * (gm - iw)) / den;
  m.m2b = -2.0 * i * std::sqrt(k2 * gm) * g2 * (k1 - iw) / den;
  return m;
}

/// Output spectral moments at one frequency, vacuum-normalized (empty input gives var = 1).
struct SpectrumPoint {
  double omega = 0.0;
  double var_x1 = 1.0;  // <X1[w] X1[-w]> = <Y1 Y1>
  double var_x2 = 1.0;
  Complex cross{0.0, 0.0};  // <X1[w] X2[-w]> = -<Y1 Y2>
  double s12 = 1.0;
  double s21 = 1.0;
  double n1_out = 0.0;  // photon-number spectra
  double n2_out = 0.0;
};

inline SpectrumPoint spectrum_point(const SystemParams& params, double omega) {
  const TransferMatrix p = transfer_matrix(params, omega);
  const TransferMatrix m = transfer_matrix(params, -omega);
  const double n = params.n_th;

  SpectrumPoint s;
  s.omega = omega;
  s.var_x1 = std::norm(p.m11) + std::norm(m.m12) + std::norm(m.m1b) * (n + 1.0) +
             std::norm(p.m1b) * n;
  s.var_x2 = std::norm(p.m22) + std::norm(m.m12) + std::norm(p.m2b) * (n + 1.0) +
             std::norm(m.m2b) * n;
  s.cross = -p.m11 * m.m12 + std::conj(m.m12) * std::conj(p.m22) +
            std::conj(m.m1b) * std::conj(p.m2b) * (n + 1.0) + p.m1b * m.m2b * n;
  if (!(s.var_x1 > 0.0) || !(s.var_x2 > 0.0)) {
    throw NumericError("degenerate spectral conditioning: zero output variance");
  }
  const double cc = std::norm(s.cross);
  const double inf1 = s.var_x1 - cc / s.var_x2;
  const double inf2 = s.var_x2 - cc / s.var_x1;
  s.s12 = inf1 * inf1;
  s.s21 = inf2 * inf2;
  s.n1_out = std::norm(p.m12) + std::norm(p.m1b) * (n + 1.0);
  s.n2_out = std::norm(p.m12) + std::norm(p.m2b) * n;
  return s;
}

/// Symmetric grid covering the sidebands: +-5 max(Omega, kappa), 2001 points.
inline std::vector<double> default_omega_grid(const SystemParams& params, int points = 2001) {
  const double omega = std::sqrt(std::abs(params.g2 * params.g2 - params.g1 * params.g1));
  const double half = 5.0 * std::max({omega, params.kappa1, params.kappa2});
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int k = 0; k < points; ++k) {
    grid[static_cast<std::size_t>(k)] =
        points == 1 ? 0.0 : -half + 2.0 * half * k / static_cast<double>(points - 1);
  }
  return grid;
}

/// Spectrum over a frequency grid; requires a stable system.
inline std::vector<SpectrumPoint> spectrum(const SystemParams& params,
                                           const std::vector<double>& omegas) {
  const StabilityReport rep = assess_stability(params);
  if (!rep.spectral_pass) throw NoSteadyState(rep);
  std::vector<SpectrumPoint> out(omegas.size());
  parallel_for(omegas.size(), [&](std::size_t k) { out[k] = spectrum_point(params, omegas[k]); });
  return out;
}

/// Frequencies of strong two-way spectral steering: 0 and +-sqrt(Omega^2 - kappa^2).
inline std::vector<double> resonance_frequencies(const SystemParams& params) {
  validate(params);
  if (!equal_losses(params)) throw DomainError("resonances need kappa1 == kappa2");
  if (params.g1 > params.g2) throw DomainError("resonances need g2 >= g1");
  const double omega_sq = params.g2 * params.g2 - params.g1 * params.g1;
  const double kappa_sq = params.kappa1 * params.kappa1;
  if (omega_sq <= kappa_sq) return {0.0};
  const double side = std::sqrt(omega_sq - kappa_sq);
  return {-side, 0.0, side};
}

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double x) const { return lower < x && x < upper; }
};

/// n_th window for output one-way steering 2 -> 1 at w = 0:
/// g1^2/(kappa gamma_m) < n_th < g2^2/(kappa gamma_m) - 1. Empty -> nullopt.
inline std::optional<Interval> thermal_window(const SystemParams& params) {
  validate(params);
  if (!equal_losses(params)) throw DomainError("thermal window needs kappa1 == kappa2");
  if (!(params.gamma_m > 0.0)) throw DomainError("thermal window unbounded at gamma_m = 0");
  const double unit = params.kappa1 * params.gamma_m;
  Interval w{params.g1 * params.g1 / unit, params.g2 * params.g2 / unit - 1.0};
  if (!(w.lower < w.upper)) return std::nullopt;
  return w;
}

/// gamma_m above which S12[0] > 1 while S21[0] < 1 at n_th = 0: g2^2 / kappa.
inline double spectral_oneway_threshold(const SystemParams& params) {
  validate(params);
  if (!equal_losses(params)) throw DomainError("spectral threshold needs kappa1 == kappa2");
  return params.g2 * params.g2 / params.kappa1;
}

}  // namespace steerkit
