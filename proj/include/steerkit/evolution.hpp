#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "steerkit/generators.hpp"
#include "steerkit/moments.hpp"
#include "steerkit/steady_state.hpp"

namespace steerkit {

class ConvergenceError : public NumericError {
 public:
  ConvergenceError(const std::string& what, double step, double change)
      : NumericError(what), step_(step), change_(change) {}
  double step() const { return step_; }
  double change() const { return change_; }

 private:
  double step_;
  double change_;
};

struct EvolutionOptions {
  /// Base step; default 1e-3 / spectral radius of A.
  std::optional<double> step;
  /// Halving the step may change no moment by more than tolerance * max(1, |Phi|_max).
  double tolerance = 1e-8;
  int max_halvings = 6;
};

namespace detail {

/// One classical RK4 step of v' = L v + b is exactly the affine map
/// v -> P v + q with P = sum_{k<=4} (hL)^k / k!, q = h sum_{k<=3} (hL)^k/(k+1)! b.
struct AffineStep {
  Eigen::MatrixXcd p;
  Eigen::VectorXcd q;

  AffineStep then(const AffineStep& next) const { return {next.p * p, next.p * q + next.q}; }
};

inline AffineStep rk4_step(const Eigen::MatrixXcd& l, const Eigen::VectorXcd& b, double h) {
  const Eigen::Index n = l.rows();
  const Eigen::MatrixXcd hl = h * l;
  const Eigen::MatrixXcd hl2 = hl * hl;
  const Eigen::MatrixXcd hl3 = hl2 * hl;
  const Eigen::MatrixXcd hl4 = hl3 * hl;
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  AffineStep s;
  s.p = id + hl + hl2 / 2.0 + hl3 / 6.0 + hl4 / 24.0;
  s.q = h * ((id + hl / 2.0 + hl2 / 6.0 + hl3 / 24.0) * b);
  return s;
}

inline AffineStep power(AffineStep base, std::uint64_t count) {
  const Eigen::Index n = base.p.rows();
  AffineStep acc{Eigen::MatrixXcd::Identity(n, n), Eigen::VectorXcd::Zero(n)};
  while (count > 0) {
    if (count & 1U) acc = acc.then(base);
    count >>= 1U;
    if (count > 0) base = base.then(base);
  }
  return acc;
}

/// Fixed step h_max upper bound; each interval uses ceil(dt / h_max) equal steps.
inline std::vector<Matrix6c> integrate(const Eigen::MatrixXcd& l, const Eigen::VectorXcd& b,
                                       const Matrix6c& initial, std::span<const double> times,
                                       double h_max) {
  std::vector<Matrix6c> out;
  out.reserve(times.size());
  Eigen::VectorXcd v = vec(initial);
  double t = 0.0;  // the initial state sits at t = 0

  // Equal intervals are common (uniform output grids); reuse their map.
  double cached_dt = -1.0;
  AffineStep cached;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double dt = times[k] - t;
    if (dt == 0.0) {
      out.push_back(unvec(v));
      continue;
    }
    if (dt != cached_dt) {
      const double steps = std::ceil(dt / h_max);
      const auto count = static_cast<std::uint64_t>(std::max(1.0, steps));
      cached = power(rk4_step(l, b, dt / static_cast<double>(count)), count);
      cached_dt = dt;
    }
    v = cached.p * v + cached.q;
    out.push_back(unvec(v));
    t = times[k];
  }
  return out;
}

}  // namespace detail

/// Phi(t) at each requested time, by fixed-step RK4 on
/// dPhi/dt = A Phi + Phi A^T + 2KD. The step is halved until the trajectory
/// stops changing within options.tolerance; the finer trajectory is returned.
inline std::vector<MomentState> evolve_moments(const SystemParams& params,
                                               const MomentState& initial,
                                               std::span<const double> times,
                                               const EvolutionOptions& options = {}) {
  if (times.empty()) throw InvalidParams("evolve_moments needs at least one time");
  if (times.front() < 0.0) throw InvalidParams("times must be >= 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw InvalidParams("times must be strictly increasing");
  }
  if (initial.structure_defect() > 1e-10 || initial.n1() < -1e-12 || initial.n2() < -1e-12 ||
      initial.nm() < -1e-12) {
    throw InvalidParams("initial moments are not physical");
  }
  if (to_correlation_matrix(initial).uncertainty_margin() < -1e-10) {
    throw InvalidParams("initial moments violate the uncertainty principle");
  }

  const Generators gen = build_generators(params);
  const Eigen::MatrixXcd l = detail::sylvester_operator(gen.drift);
  const Eigen::VectorXcd b = detail::vec(gen.diffusion());

  double h = 0.0;
  if (options.step) {
    h = *options.step;
    if (!(h > 0.0)) throw InvalidParams("step must be > 0");
  } else {
    const double radius = assess_stability(params).spectral_radius;
    h = radius > 0.0 ? 1e-3 / radius : (times.back() - times.front()) / 1000.0;
    if (!(h > 0.0)) h = 1.0;
  }

  auto coarse = detail::integrate(l, b, initial.phi(), times, h);
  double change = 0.0;
  for (int halving = 0; halving <= options.max_halvings; ++halving) {
    h /= 2.0;
    auto fine = detail::integrate(l, b, initial.phi(), times, h);
    change = 0.0;
    for (std::size_t k = 0; k < fine.size(); ++k) {
      const double scale = std::max(1.0, fine[k].cwiseAbs().maxCoeff());
      change = std::max(change, (fine[k] - coarse[k]).cwiseAbs().maxCoeff() / scale);
    }
    coarse = std::move(fine);
    if (change < options.tolerance) {
      std::vector<MomentState> states;
      states.reserve(coarse.size());
      for (const auto& phi : coarse) states.emplace_back(phi);
      return states;
    }
  }
  std::ostringstream os;
  os << "RK4 step halving did not converge: relative change " << change << " at step " << h;
  throw ConvergenceError(os.str(), h, change);
}

}  // namespace steerkit
