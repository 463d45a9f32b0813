#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "steerkit/parallel.hpp"
#include "steerkit/params.hpp"
#include "steerkit/steady_state.hpp"
#include "steerkit/steering.hpp"

namespace steerkit {

enum class Objective { s12, s21, en };

inline std::string_view to_string(Objective o) {
  switch (o) {
    case Objective::s12: return "S12";
    case Objective::s21: return "S21";
    case Objective::en: return "EN";
  }
  return "?";
}

inline std::optional<Objective> parse_objective(std::string_view s) {
  if (s == "S12" || s == "s12") return Objective::s12;
  if (s == "S21" || s == "s21") return Objective::s21;
  if (s == "EN" || s == "en" || s == "E_N") return Objective::en;
  return std::nullopt;
}

struct FreeParam {
  Param param = Param::g1;
  double min = 0.0;
  double max = 0.0;
  int steps = 2;

  double at(int k) const {
    return steps == 1 ? min : min + (max - min) * k / static_cast<double>(steps - 1);
  }
};

struct SweepSpec {
  std::vector<FreeParam> free_params;
  SystemParams fixed;
  Objective objective = Objective::s12;
  bool require_stable = true;
  bool equal_losses = false;  // kappa2 follows kappa1 at every point
  bool g2_above_g1 = false;   // drop points with g2 <= g1
};

inline void validate(const SweepSpec& spec) {
  validate(spec.fixed);
  if (spec.free_params.empty()) throw InvalidParams("sweep needs at least one free parameter");
  for (const FreeParam& f : spec.free_params) {
    const std::string name(to_string(f.param));
    if (!std::isfinite(f.min) || !std::isfinite(f.max)) throw InvalidParams(name + ": range not finite");
    if (f.min > f.max) throw InvalidParams(name + ": min > max");
    if (f.steps < 1) throw InvalidParams(name + ": steps must be >= 1");
    if (f.steps == 1 && f.min != f.max) throw InvalidParams(name + ": a single step needs min == max");
    if (f.steps >= 2 && f.min == f.max) throw InvalidParams(name + ": empty range needs steps == 1");
    if (spec.equal_losses && f.param == Param::kappa2) {
      throw InvalidParams("kappa2 cannot be free when equal_losses is set");
    }
  }
}

/// Objective at one point, or nullopt if the point is unstable or excluded.
struct PointEvaluation {
  SystemParams params;
  StabilityReport stability;
  std::optional<SteeringResult> result;
  bool numeric_failure = false;
};

inline bool passes_guards(const SweepSpec& spec, const SystemParams& p) {
  return !spec.g2_above_g1 || p.g2 > p.g1;
}

inline SystemParams apply_constraints(const SweepSpec& spec, SystemParams p) {
  if (spec.equal_losses) p.kappa2 = p.kappa1;
  return p;
}

inline PointEvaluation evaluate_point(const SystemParams& params) {
  PointEvaluation e{params, assess_stability(params), std::nullopt};
  if (e.stability.spectral_pass) {
    const Generators gen = build_generators(params);
    try {
      e.result = evaluate_steering(MomentState(solve_lyapunov(gen.drift, gen.diffusion())));
    } catch (const NumericError&) {
      e.numeric_failure = true;  // marginally stable: treated as infeasible
    }
  }
  return e;
}

inline double objective_value(Objective o, const SteeringResult& r) {
  switch (o) {
    case Objective::s12: return r.s12;
    case Objective::s21: return r.s21;
    case Objective::en: return -r.e_n;
  }
  return std::numeric_limits<double>::infinity();
}

/// Visits every grid index tuple, last dimension fastest.
template <typename Visit>
void for_each_grid_index(const std::vector<FreeParam>& axes, Visit&& visit) {
  std::vector<int> index(axes.size(), 0);
  while (true) {
    visit(index);
    std::size_t d = axes.size();
    while (d > 0) {
      --d;
      if (++index[d] < axes[d].steps) break;
      index[d] = 0;
      if (d == 0) return;
    }
    if (axes.empty()) return;
  }
}

enum class SweepWarning { none, all_infeasible, empty_after_constraints };

struct SweepRow {
  SystemParams params;
  bool stable = false;
  double max_real_eigenvalue = 0.0;
  std::optional<SteeringResult> result;  // absent at unstable points
};

struct SweepTable {
  std::vector<Param> columns;  // free parameters, slowest-varying first
  std::vector<SweepRow> rows;
  SweepWarning warning = SweepWarning::none;
};

/// Cartesian grid over the free parameters; rows in lexicographic index order
/// with the first free parameter varying slowest.
inline SweepTable grid_sweep(const SweepSpec& spec) {
  validate(spec);
  SweepTable table;
  for (const FreeParam& f : spec.free_params) table.columns.push_back(f.param);

  std::vector<SystemParams> points;
  for_each_grid_index(spec.free_params, [&](const std::vector<int>& index) {
    SystemParams p = spec.fixed;
    for (std::size_t d = 0; d < index.size(); ++d) {
      set(p, spec.free_params[d].param, spec.free_params[d].at(index[d]));
    }
    p = apply_constraints(spec, p);
    if (passes_guards(spec, p)) points.push_back(p);
  });
  table.rows.resize(points.size());
  parallel_for(points.size(), [&](std::size_t k) {
    const PointEvaluation e = evaluate_point(points[k]);
    table.rows[k] = {e.params, e.stability.spectral_pass, e.stability.max_real_eigenvalue, e.result};
  });
  if (table.rows.empty()) {
    table.warning = SweepWarning::empty_after_constraints;
  } else if (std::none_of(table.rows.begin(), table.rows.end(),
                          [](const SweepRow& r) { return r.stable; })) {
    table.warning = SweepWarning::all_infeasible;
  }
  return table;
}

struct PatternSearchOptions {
  double initial_step = 0.25;
  double min_step = 1e-4;
  int max_evaluations = 200000;
};

struct PatternSearchResult {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

/// Compass search on the unit cube [0, 1]^d: poll +-step along each axis, move
/// to the first improvement, halve the step when none improves.
inline PatternSearchResult pattern_search(const std::function<double(std::span<const double>)>& f,
                                          std::vector<double> start,
                                          const PatternSearchOptions& options = {}) {
  PatternSearchResult best;
  for (double& u : start) u = std::clamp(u, 0.0, 1.0);
  best.x = std::move(start);
  best.value = f(best.x);
  best.evaluations = 1;
  double step = options.initial_step;
  std::vector<double> trial(best.x.size());
  while (step >= options.min_step && best.evaluations < options.max_evaluations) {
    bool moved = false;
    for (std::size_t d = 0; d < best.x.size() && !moved; ++d) {
      for (double dir : {1.0, -1.0}) {
        trial = best.x;
        trial[d] = std::clamp(best.x[d] + dir * step, 0.0, 1.0);
        if (trial[d] == best.x[d]) continue;
        const double v = f(trial);
        ++best.evaluations;
        if (v < best.value) {
          best.value = v;
          best.x = trial;
          moved = true;
          break;
        }
      }
    }
    if (!moved) step /= 2.0;
  }
  return best;
}

struct SweptAxis {
  Param param = Param::g2;
  std::vector<double> values;
};

struct FrontierPoint {
  double swept_value = 0.0;
  std::vector<double> argmin;  // one entry per free parameter
  double min_value = std::numeric_limits<double>::infinity();
  double coarse_value = std::numeric_limits<double>::infinity();
  bool feasible = false;
  std::optional<SteeringResult> at_min;
};

/// For every swept value: coarse grid over the free parameters, then compass
/// search from the best cell until the step in scaled units drops below 1e-4.
inline std::vector<FrontierPoint> minimize_steering(const SweepSpec& spec, const SweptAxis& swept,
                                                    double min_step = 1e-4) {
  validate(spec);
  for (const FreeParam& f : spec.free_params) {
    if (f.param == swept.param) throw InvalidParams("swept parameter is also free");
  }
  const std::size_t dims = spec.free_params.size();
  std::vector<FrontierPoint> out(swept.values.size());

  parallel_for(swept.values.size(), [&](std::size_t s) {
    FrontierPoint& fp = out[s];
    fp.swept_value = swept.values[s];
    SystemParams base = spec.fixed;
    set(base, swept.param, swept.values[s]);

    auto to_params = [&](std::span<const double> u) {
      SystemParams p = base;
      for (std::size_t d = 0; d < dims; ++d) {
        const FreeParam& f = spec.free_params[d];
        set(p, f.param, f.min + u[d] * (f.max - f.min));
      }
      return apply_constraints(spec, p);
    };
    auto objective = [&](std::span<const double> u) {
      const SystemParams p = to_params(u);
      if (!passes_guards(spec, p)) return std::numeric_limits<double>::infinity();
      const PointEvaluation e = evaluate_point(p);
      if (!e.result) return std::numeric_limits<double>::infinity();
      return objective_value(spec.objective, *e.result);
    };

    // Coarse scan, lexicographic order; ties keep the first cell.
    std::vector<double> u(dims, 0.0), best_u(dims, 0.0);
    double best = std::numeric_limits<double>::infinity();
    double cell = 1.0;
    for (const FreeParam& f : spec.free_params) {
      if (f.steps > 1) cell = std::min(cell, 1.0 / (f.steps - 1));
    }
    for_each_grid_index(spec.free_params, [&](const std::vector<int>& index) {
      for (std::size_t d = 0; d < dims; ++d) {
        const int steps = spec.free_params[d].steps;
        u[d] = steps == 1 ? 0.0 : index[d] / static_cast<double>(steps - 1);
      }
      const double v = objective(u);
      if (v < best) {
        best = v;
        best_u = u;
      }
    });
    fp.coarse_value = best;
    if (!std::isfinite(best)) return;

    PatternSearchOptions opts;
    opts.initial_step = cell;
    opts.min_step = min_step;
    const PatternSearchResult refined = pattern_search(objective, best_u, opts);
    const std::vector<double>& final_u = refined.value < best ? refined.x : best_u;
    const SystemParams at = to_params(final_u);
    const PointEvaluation check = evaluate_point(at);
    if (!check.result) return;  // re-verification failed; report infeasible
    fp.feasible = true;
    fp.min_value = std::min(refined.value, best);
    fp.at_min = check.result;
    for (std::size_t d = 0; d < dims; ++d) fp.argmin.push_back(get(at, spec.free_params[d].param));
  });
  return out;
}

}  // namespace steerkit
