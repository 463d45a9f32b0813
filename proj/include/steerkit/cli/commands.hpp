#pragma once

#include <algorithm>
#include <optional>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "steerkit/cli/config.hpp"
#include "steerkit/cli/csv.hpp"
#include "steerkit/steerkit.hpp"

namespace steerkit::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitInvalidConfig = 2,
  kExitUnstable = 3,
  kExitNumeric = 4,
};

enum class Format { text, csv };

struct Io {
  std::ostream& out;
  std::ostream& err;
  Format format = Format::text;
  bool quiet = false;
};

inline void write_stability(std::ostream& os, const StabilityReport& r) {
  os << "stability: " << (r.stable() ? "stable" : "unstable") << '\n'
     << "  max_real_eigenvalue = " << format_number(r.max_real_eigenvalue) << '\n'
     << "  spectral_radius = " << format_number(r.spectral_radius) << '\n'
     << "  routh_hurwitz = " << (r.analytic_pass ? "pass" : "fail") << " (margins "
     << format_number(r.hurwitz_margin_1) << ", " << format_number(r.hurwitz_margin_2) << ")\n";
}

/// Steady values used by the steady command and by reproduce.
struct SteadyRow {
  SystemParams params;
  MomentState moments;
  SteeringResult steering;
};

inline SteadyRow steady_row(const SystemParams& p) {
  const MomentState m = steady_state_lyapunov(p);
  return {p, m, evaluate_steering(m)};
}

inline const std::vector<std::string>& steady_columns() {
  static const std::vector<std::string> cols{"kappa1", "kappa2", "g1", "g2", "gamma_m",
                                             "n_th",   "n1",     "n2", "nm", "re_c",
                                             "im_c",   "s12",    "s21", "e_n", "class"};
  return cols;
}

inline void write_steady_row(CsvWriter& csv, const SteadyRow& r) {
  const SystemParams& p = r.params;
  csv.cell(p.kappa1).cell(p.kappa2).cell(p.g1).cell(p.g2).cell(p.gamma_m).cell(p.n_th);
  csv.cell(r.moments.n1()).cell(r.moments.n2()).cell(r.moments.nm());
  csv.cell(r.moments.c().real()).cell(r.moments.c().imag());
  csv.cell(r.steering.s12).cell(r.steering.s21).cell(r.steering.e_n);
  csv.cell(to_string(r.steering.classification));
  csv.end_row();
}

inline int cmd_steady(const ScenarioConfig& cfg, Io io) {
  const StabilityReport rep = assess_stability(cfg.params);
  if (!rep.stable()) {
    write_stability(io.err, rep);
    return kExitUnstable;
  }
  const SteadyRow row = steady_row(cfg.params);
  if (io.format == Format::csv) {
    CsvWriter csv(io.out);
    csv.header(steady_columns());
    write_steady_row(csv, row);
    return kExitOk;
  }
  const Complex c = row.moments.c();
  io.out << "n1 = " << format_number(row.moments.n1()) << '\n'
         << "n2 = " << format_number(row.moments.n2()) << '\n'
         << "nm = " << format_number(row.moments.nm()) << '\n'
         << "c = " << format_number(c.real()) << (c.imag() < 0 ? " - " : " + ")
         << format_number(std::abs(c.imag())) << "i\n"
         << "s12 = " << format_number(row.steering.s12) << '\n'
         << "s21 = " << format_number(row.steering.s21) << '\n'
         << "e_n = " << format_number(row.steering.e_n) << '\n'
         << "class = " << to_string(row.steering.classification) << '\n';
  return kExitOk;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) v[k] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1.0);
  return v;
}

inline void write_evolution(std::ostream& os, std::span<const double> times,
                            const std::vector<MomentState>& states) {
  CsvWriter csv(os);
  csv.header({"t", "s12", "s21", "e_n", "n1", "n2", "nm"});
  for (std::size_t k = 0; k < states.size(); ++k) {
    const SteeringResult r = evaluate_steering(states[k]);
    csv.cell(times[k]).cell(r.s12).cell(r.s21).cell(r.e_n);
    csv.cell(states[k].n1()).cell(states[k].n2()).cell(states[k].nm());
    csv.end_row();
  }
}

inline int cmd_evolve(const ScenarioConfig& cfg, Io io) {
  const EvolveBlock block = cfg.evolve.value_or(EvolveBlock{});
  MomentState initial;
  switch (block.initial) {
    case InitialState::vacuum_thermal: initial = MomentState::vacuum_thermal(cfg.params.n_th); break;
    case InitialState::vacuum: initial = MomentState::vacuum_thermal(0.0); break;
    case InitialState::steady: {
      const StabilityReport rep = assess_stability(cfg.params);
      if (!rep.stable()) {
        write_stability(io.err, rep);
        return kExitUnstable;
      }
      initial = steady_state_lyapunov(cfg.params);
      break;
    }
  }
  const std::vector<double> times = linspace(0.0, block.t_max, block.n_points);
  write_evolution(io.out, times, evolve_moments(cfg.params, initial, times));
  return kExitOk;
}

inline void write_spectrum(std::ostream& os, const std::vector<SpectrumPoint>& points) {
  CsvWriter csv(os);
  csv.header({"omega", "var_x1", "var_x2", "cross", "s12", "s21", "n1_out", "n2_out", "cross_im"});
  for (const SpectrumPoint& s : points) {
    csv.cell(s.omega).cell(s.var_x1).cell(s.var_x2).cell(s.cross.real()).cell(s.s12).cell(s.s21);
    csv.cell(s.n1_out).cell(s.n2_out).cell(s.cross.imag());
    csv.end_row();
  }
}

inline int cmd_spectra(const ScenarioConfig& cfg, Io io) {
  const StabilityReport rep = assess_stability(cfg.params);
  if (!rep.stable()) {
    write_stability(io.err, rep);
    return kExitUnstable;
  }
  const SpectraBlock block = cfg.spectra.value_or(SpectraBlock{});
  const std::vector<double> grid = block.omega_min
                                       ? linspace(*block.omega_min, *block.omega_max, block.n_points)
                                       : default_omega_grid(cfg.params, block.n_points);
  write_spectrum(io.out, spectrum(cfg.params, grid));
  return kExitOk;
}

inline void write_sweep_table(std::ostream& os, const SweepTable& table) {
  CsvWriter csv(os);
  std::vector<std::string> cols;
  for (Param p : table.columns) cols.emplace_back(to_string(p));
  for (const char* c : {"kappa2", "stable", "max_real_eigenvalue", "s12", "s21", "e_n", "class"}) {
    cols.emplace_back(c);
  }
  csv.header(cols);
  for (const SweepRow& row : table.rows) {
    for (Param p : table.columns) csv.cell(get(row.params, p));
    csv.cell(row.params.kappa2).cell(row.stable).cell(row.max_real_eigenvalue);
    if (row.result) {
      csv.cell(row.result->s12).cell(row.result->s21).cell(row.result->e_n);
      csv.cell(to_string(row.result->classification));
    } else {
      csv.empty().empty().empty().empty();
    }
    csv.end_row();
  }
}

inline void write_frontier(std::ostream& os, const SweepSpec& spec, const SweptAxis& swept,
                           const std::vector<FrontierPoint>& points) {
  CsvWriter csv(os);
  std::vector<std::string> cols{std::string(to_string(swept.param))};
  for (const FreeParam& f : spec.free_params) cols.push_back(std::string(to_string(f.param)) + "_at_min");
  for (const char* c : {"objective", "min_value", "coarse_value", "feasible", "s12", "s21", "e_n", "class"}) {
    cols.emplace_back(c);
  }
  csv.header(cols);
  for (const FrontierPoint& fp : points) {
    csv.cell(fp.swept_value);
    for (std::size_t d = 0; d < spec.free_params.size(); ++d) {
      if (fp.feasible) csv.cell(fp.argmin[d]); else csv.empty();
    }
    csv.cell(to_string(spec.objective));
    if (fp.feasible) csv.cell(fp.min_value); else csv.empty();
    if (std::isfinite(fp.coarse_value)) csv.cell(fp.coarse_value); else csv.empty();
    csv.cell(fp.feasible);
    if (fp.at_min) {
      csv.cell(fp.at_min->s12).cell(fp.at_min->s21).cell(fp.at_min->e_n);
      csv.cell(to_string(fp.at_min->classification));
    } else {
      csv.empty().empty().empty().empty();
    }
    csv.end_row();
  }
}

inline int cmd_sweep(const ScenarioConfig& cfg, Io io) {
  if (!cfg.sweep) throw ConfigError(0, "sweep needs a [sweep] block");
  const SweepBlock& block = *cfg.sweep;
  if (block.swept) {
    const auto points = minimize_steering(block.spec, *block.swept, block.refine_step);
    write_frontier(io.out, block.spec, *block.swept, points);
    if (!io.quiet) {
      const auto infeasible = std::count_if(points.begin(), points.end(),
                                            [](const FrontierPoint& p) { return !p.feasible; });
      if (infeasible > 0) io.err << "warning: " << infeasible << " swept values have no feasible point\n";
    }
    return kExitOk;
  }
  const SweepTable table = grid_sweep(block.spec);
  write_sweep_table(io.out, table);
  if (!io.quiet && table.warning == SweepWarning::all_infeasible) {
    io.err << "warning: every grid point is unstable\n";
  } else if (!io.quiet && table.warning == SweepWarning::empty_after_constraints) {
    io.err << "warning: constraints removed every grid point\n";
  }
  return kExitOk;
}

/// One line of the condition report.
struct CheckEntry {
  std::string key;
  std::string value;
  std::string human;
};

inline std::vector<CheckEntry> check_entries(const ScenarioConfig& cfg) {
  const SystemParams& p = cfg.params;
  std::vector<CheckEntry> out;
  auto add = [&](std::string key, std::string value, std::optional<std::string> human = std::nullopt) {
    std::string line = human ? *human : key + ": " + value;
    out.push_back({std::move(key), std::move(value), std::move(line)});
  };
  auto add_kv = [&](std::string key, std::string value) {
    out.push_back({std::move(key), std::move(value), {}});
  };
  auto num = [](double v) { return format_number(v); };
  auto brief = [](double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
  };

  const StabilityReport st = assess_stability(p);
  add("stable", st.stable() ? "true" : "false");
  add("routh_hurwitz", st.analytic_pass ? "PASS" : "FAIL",
      "routh_hurwitz: margins " + brief(st.hurwitz_margin_1) + ", " + brief(st.hurwitz_margin_2) + " " +
          (st.analytic_pass ? "PASS" : "FAIL"));
  add("max_real_eigenvalue", num(st.max_real_eigenvalue));

  const RegimePredicates rp = regime_predicates(p);
  auto predicate = [&](const std::string& name, const Inequality& q) {
    const std::string status(to_string(q.status));
    add(name, status, name + ": " + brief(q.lhs) + (q.less_than ? " < " : " > ") + brief(q.rhs) + " " + status);
    if (q.status != PredicateStatus::not_applicable) {
      add_kv(name + ".lhs", num(q.lhs));
      add_kv(name + ".rhs", num(q.rhs));
    }
  };
  predicate("s12_oneway_weak", rp.s12_oneway_weak);
  predicate("s21_oneway_weak", rp.s21_oneway_weak);
  predicate("entangled_weak", rp.entangled_weak);
  if (rp.s21_cond_strong.status == PredicateStatus::not_applicable) {
    add("s21_cond_strong", "NOT_APPLICABLE");
  } else {
    predicate("s21_cond_strong", rp.s21_cond_strong);
  }
  if (rp.s12_cond_strong.status == PredicateStatus::not_applicable) {
    add("s12_cond_strong", "NOT_APPLICABLE");
  } else {
    predicate("s12_cond_strong", rp.s12_cond_strong);
  }

  if (equal_losses(p)) {
    add("spectral_oneway_threshold", num(spectral_oneway_threshold(p)),
        "spectral one-way threshold gamma_m* = " + brief(spectral_oneway_threshold(p)));
    if (p.gamma_m > 0.0) {
      const auto w = thermal_window(p);
      if (w) {
        add("thermal_window", num(w->lower) + "," + num(w->upper),
            "thermal window: " + brief(w->lower) + " < n_th < " + brief(w->upper) +
                (w->contains(p.n_th) ? " (n_th inside)" : " (n_th outside)"));
      } else {
        add("thermal_window", "EMPTY");
      }
    } else {
      add("thermal_window", "NOT_APPLICABLE");
    }
    if (p.g1 <= p.g2) {
      const auto res = resonance_frequencies(p);
      std::string list;
      for (double w : res) list += (list.empty() ? "" : ";") + num(w);
      add("resonances", list);
    } else {
      add("resonances", "NOT_APPLICABLE");
    }
  } else {
    add("spectral_oneway_threshold", "NOT_APPLICABLE");
    add("thermal_window", "NOT_APPLICABLE");
    add("resonances", "NOT_APPLICABLE");
  }

  if (equal_losses(p) && p.g1 < p.g2) {
    const FrameResidual fr = transformed_generator_residual(p);
    add("squeezed_frame.r", num(squeeze_parameter(p.g1, p.g2)));
    add("squeezed_frame.omega", num(fr.omega));
    add("squeezed_frame.max_c2_coupling", num(fr.max_c2_coupling));
    add("squeezed_frame.c1_b_coupling_error", num(fr.c1_b_coupling_error));
  } else {
    add("squeezed_frame", "NOT_APPLICABLE", "squeezed_frame: not applicable");
  }

  const RwaReport rwa = assess_rwa(p, cfg.rwa_margin_factor);
  if (!rwa.assessable) {
    add("rwa", "NOT_APPLICABLE", "rwa: not applicable (omega_m not given)");
  } else {
    add("rwa", rwa.pass() ? "PASS" : "FAIL",
        "rwa: min omega_m/rate = " + brief(rwa.min_ratio()) + " vs margin " + brief(rwa.margin_factor) +
            " " + (rwa.pass() ? "PASS" : "FAIL"));
    for (const RwaCheck& c : rwa.checks) {
      add_kv("rwa." + c.quantity, num(c.ratio));
    }
  }
  return out;
}

inline int cmd_check(const ScenarioConfig& cfg, Io io) {
  const auto entries = check_entries(cfg);
  if (io.format == Format::csv) {
    CsvWriter csv(io.out);
    csv.header({"key", "value"});
    for (const auto& e : entries) {
      std::string v = e.value;
      std::replace(v.begin(), v.end(), ',', ';');
      csv.cell(e.key).cell(v);
      csv.end_row();
    }
    return kExitOk;
  }
  if (!io.quiet) {
    for (const auto& e : entries) {
      if (!e.human.empty()) io.out << e.human << '\n';
    }
    io.out << '\n';
  }
  for (const auto& e : entries) io.out << e.key << '=' << e.value << '\n';
  return kExitOk;
}

}  // namespace steerkit::cli
