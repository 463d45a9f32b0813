#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "steerkit/cli/commands.hpp"

namespace steerkit::cli {

struct OutputFile {
  std::string name;
  std::string content;
};

/// One manifest line: what was used and whether it was stated or estimated.
struct ManifestEntry {
  std::string key;
  std::string value;
  std::string source;  // "stated", "estimate" or "derived"
};

struct FigureBundle {
  std::string description;
  std::vector<OutputFile> files;
  std::vector<ManifestEntry> manifest;
};

struct FigureInfo {
  std::string id;
  std::function<FigureBundle()> build;
};

namespace figures {

inline void add_params(FigureBundle& b, const SystemParams& p, const std::vector<std::string>& stated) {
  for (Param q : kAllParams) {
    const std::string name(to_string(q));
    const bool is_stated = std::find(stated.begin(), stated.end(), name) != stated.end();
    b.manifest.push_back({name, format_number(get(p, q)), is_stated ? "stated" : (name == "kappa1" ? "unit" : "estimate")});
  }
}

inline std::string range(double lo, double hi, int n) {
  return format_number(lo) + ".." + format_number(hi) + " (" + std::to_string(n) + " points)";
}

inline std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ";") + format_number(x);
  return s;
}

inline FigureBundle time_trace(const std::string& file, const std::string& description,
                               const SystemParams& p, const std::vector<std::string>& stated,
                               double t_max, int n) {
  FigureBundle b;
  b.description = description;
  add_params(b, p, stated);
  b.manifest.push_back({"t", range(0.0, t_max, n), "estimate"});
  b.manifest.push_back({"initial", "vacuum-thermal", "estimate"});
  const auto times = linspace(0.0, t_max, n);
  std::ostringstream os;
  write_evolution(os, times, evolve_moments(p, MomentState::vacuum_thermal(p.n_th), times));
  b.files.push_back({file, os.str()});
  return b;
}

/// Frontier of min over g1 versus g2 for several n_th, concatenated with an n_th column.
inline FigureBundle g1_frontier(const std::string& file, const std::string& description,
                                double kappa2, Objective objective, const std::vector<double>& n_th) {
  FigureBundle b;
  b.description = description;
  SystemParams p;
  p.kappa2 = kappa2;
  p.gamma_m = 0.01;
  b.manifest.push_back({"kappa1", "1", "unit"});
  b.manifest.push_back({"kappa2", format_number(kappa2), "stated"});
  b.manifest.push_back({"gamma_m", "0.01", "estimate"});
  b.manifest.push_back({"n_th", list(n_th), "stated"});
  b.manifest.push_back({"g2", range(5.0, 30.0, 26), "estimate"});
  b.manifest.push_back({"g1", "minimized over 0..40 (81 coarse points, then compass search)", "estimate"});
  b.manifest.push_back({"objective", std::string(to_string(objective)), "stated"});

  SweepSpec spec;
  spec.fixed = p;
  spec.objective = objective;
  spec.free_params = {{Param::g1, 0.0, 40.0, 81}};
  const SweptAxis g2{Param::g2, linspace(5.0, 30.0, 26)};

  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"n_th", "g2", "g1_at_min", "min_value", "s12", "s21", "e_n", "class"});
  for (double n : n_th) {
    spec.fixed.n_th = n;
    for (const FrontierPoint& fp : minimize_steering(spec, g2)) {
      csv.cell(n).cell(fp.swept_value);
      if (fp.feasible) {
        csv.cell(fp.argmin[0]).cell(fp.min_value).cell(fp.at_min->s12).cell(fp.at_min->s21);
        csv.cell(fp.at_min->e_n).cell(to_string(fp.at_min->classification));
      } else {
        csv.empty().empty().empty().empty().empty().empty();
      }
      csv.end_row();
    }
  }
  b.files.push_back({file, os.str()});
  return b;
}

inline FigureBundle spectrum_figure(const std::string& file, const std::string& description,
                                    const SystemParams& p, const std::vector<std::string>& stated,
                                    double lo, double hi, int n) {
  FigureBundle b;
  b.description = description;
  add_params(b, p, stated);
  b.manifest.push_back({"omega", range(lo, hi, n), "estimate"});
  std::ostringstream os;
  write_spectrum(os, spectrum(p, linspace(lo, hi, n)));
  b.files.push_back({file, os.str()});
  return b;
}

inline FigureBundle zero_frequency_vs_thermal(const std::string& file, const std::string& description,
                                              SystemParams p, const std::vector<std::string>& stated,
                                              double n_max, int n) {
  FigureBundle b;
  b.description = description;
  add_params(b, p, stated);
  b.manifest.back().value = range(0.0, n_max, n);
  b.manifest.back().source = "estimate";
  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"n_th", "s12_0", "s21_0"});
  for (double n_th : linspace(0.0, n_max, n)) {
    p.n_th = n_th;
    const SpectrumPoint s = spectrum_point(p, 0.0);
    csv.cell(n_th).cell(s.s12).cell(s.s21);
    csv.end_row();
  }
  b.files.push_back({file, os.str()});
  return b;
}

inline FigureBundle fig2a() {
  SystemParams p;
  p.kappa2 = 0.4;
  p.g1 = 10;
  p.g2 = 20;
  p.gamma_m = 0.01;
  return time_trace("fig2a.csv", "S12 and S21 versus time, kappa2 = 0.4 kappa1", p,
                    {"kappa2", "g1", "g2", "gamma_m", "n_th"}, 60.0, 601);
}

inline FigureBundle fig2b() {
  SystemParams p;
  p.kappa2 = 2.4;
  p.g1 = 12;
  p.g2 = 20;
  p.gamma_m = 0.01;
  return time_trace("fig2b.csv", "S12 and S21 versus time, kappa2 = 2.4 kappa1", p,
                    {"kappa2", "g1", "g2", "gamma_m", "n_th"}, 60.0, 601);
}

inline FigureBundle fig2c() {
  return g1_frontier("fig2c.csv", "minimized S12 versus g2 at kappa2 = 0.4 kappa1", 0.4, Objective::s12,
                     {1000, 700, 500, 300, 100, 0});
}

inline FigureBundle fig2d() {
  return g1_frontier("fig2d.csv", "minimized S21 versus g2 at kappa2 = 2.4 kappa1", 2.4, Objective::s21,
                     {40, 20, 0});
}

inline FigureBundle fig3a() {
  FigureBundle b;
  b.description = "S12 and S21 versus time at strong mechanical damping";
  SystemParams p;
  p.g1 = 6;
  p.g2 = 10;
  add_params(b, p, {"kappa2", "g1", "g2", "n_th"});
  b.manifest.push_back({"gamma_m", "6;8;10", "stated"});
  b.manifest.push_back({"t", range(0.0, 20.0, 401), "estimate"});
  b.manifest.push_back({"initial", "vacuum-thermal", "estimate"});
  const auto times = linspace(0.0, 20.0, 401);
  for (int gm : {6, 8, 10}) {
    p.gamma_m = gm;
    std::ostringstream os;
    write_evolution(os, times, evolve_moments(p, MomentState::vacuum_thermal(0.0), times));
    b.files.push_back({"fig3a_gamma" + std::to_string(gm) + ".csv", os.str()});
  }
  return b;
}

inline FigureBundle fig3b() {
  FigureBundle b;
  b.description = "steady S12 and S21 versus gamma_m";
  SystemParams p;
  p.g1 = 6;
  p.g2 = 10;
  add_params(b, p, {"kappa2", "g1", "g2"});
  b.manifest.back().value = "0;0.3";
  b.manifest.back().source = "stated";
  b.manifest[4].value = range(1.0, 14.0, 131);  // gamma_m
  std::ostringstream os;
  CsvWriter csv(os);
  csv.header(steady_columns());
  for (double n : {0.0, 0.3}) {
    p.n_th = n;
    for (double gm : linspace(1.0, 14.0, 131)) {
      p.gamma_m = gm;
      write_steady_row(csv, steady_row(p));
    }
  }
  b.files.push_back({"fig3b.csv", os.str()});
  return b;
}

inline SystemParams fig4_params() {
  SystemParams p;
  p.g1 = 6;
  p.g2 = 10;
  p.gamma_m = 0.01;
  return p;
}

inline SystemParams fig5_params() {
  SystemParams p;
  p.g1 = 2;
  p.g2 = 3;
  p.gamma_m = 9;
  return p;
}

inline FigureBundle fig4a() {
  const SystemParams p = fig4_params();
  return spectrum_figure("fig4a.csv", "output spectra S12[w] and S21[w], weak damping", p,
                         {"kappa2", "g1", "g2", "gamma_m", "n_th"}, -40.0, 40.0, 2001);
}

inline FigureBundle fig4b() {
  return zero_frequency_vs_thermal("fig4b.csv", "S12[0] and S21[0] versus n_th, weak damping",
                                   fig4_params(), {"kappa2", "g1", "g2", "gamma_m"}, 12000.0, 241);
}

inline FigureBundle fig5a() {
  return spectrum_figure("fig5a.csv", "output spectra S12[w] and S21[w], strong damping", fig5_params(),
                         {"kappa2", "g1", "g2", "gamma_m", "n_th"}, -10.0, 10.0, 2001);
}

inline FigureBundle fig5b() {
  return zero_frequency_vs_thermal("fig5b.csv", "S12[0] and S21[0] versus n_th, strong damping",
                                   fig5_params(), {"kappa2", "g1", "g2", "gamma_m"}, 2.0, 201);
}

inline FigureBundle fig6() {
  FigureBundle b;
  b.description = "S12 and S21 minimized over (g1, g2) versus gamma_m, equal losses";
  const std::vector<double> gammas{0.01, 0.1, 0.5, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10,
                                   11, 12, 13, 14, 15, 16, 17, 18, 19, 20};
  b.manifest.push_back({"kappa1", "1", "unit"});
  b.manifest.push_back({"kappa2", "1", "stated"});
  b.manifest.push_back({"n_th", "0", "stated"});
  b.manifest.push_back({"gamma_m", list(gammas), "estimate"});
  b.manifest.push_back({"g1", "minimized over 0.5..20 (40 coarse points, then compass search)", "estimate"});
  b.manifest.push_back({"g2", "minimized over 0.5..20 (40 coarse points, then compass search)", "estimate"});

  SweepSpec spec;
  spec.equal_losses = true;
  spec.free_params = {{Param::g1, 0.5, 20.0, 40}, {Param::g2, 0.5, 20.0, 40}};
  const SweptAxis axis{Param::gamma_m, gammas};
  spec.objective = Objective::s12;
  const auto s12 = minimize_steering(spec, axis);
  spec.objective = Objective::s21;
  const auto s21 = minimize_steering(spec, axis);

  std::ostringstream os;
  CsvWriter csv(os);
  csv.header({"gamma_m", "s12_min", "g1_at_s12_min", "g2_at_s12_min", "s21_min", "g1_at_s21_min",
              "g2_at_s21_min"});
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    csv.cell(gammas[k]);
    for (const FrontierPoint* fp : {&s12[k], &s21[k]}) {
      if (fp->feasible) csv.cell(fp->min_value).cell(fp->argmin[0]).cell(fp->argmin[1]);
      else csv.empty().empty().empty();
    }
    csv.end_row();
  }
  b.files.push_back({"fig6.csv", os.str()});
  return b;
}

}  // namespace figures

inline const std::vector<FigureInfo>& figure_registry() {
  static const std::vector<FigureInfo> registry{
      {"2a", figures::fig2a}, {"2b", figures::fig2b}, {"2c", figures::fig2c}, {"2d", figures::fig2d},
      {"3a", figures::fig3a}, {"3b", figures::fig3b}, {"4a", figures::fig4a}, {"4b", figures::fig4b},
      {"5a", figures::fig5a}, {"5b", figures::fig5b}, {"6", figures::fig6},
  };
  return registry;
}

inline std::string render_manifest(const std::string& id, const FigureBundle& b) {
  std::ostringstream os;
  os << "figure = " << id << '\n' << "description = " << b.description << '\n';
  for (const OutputFile& f : b.files) os << "file = " << f.name << '\n';
  for (const ManifestEntry& e : b.manifest) {
    os << e.key << " = " << e.value << "  [" << e.source << "]\n";
  }
  return os.str();
}

inline int cmd_reproduce(const std::string& id, const std::filesystem::path& out_dir, Io io) {
  const auto& reg = figure_registry();
  const auto it = std::find_if(reg.begin(), reg.end(), [&](const FigureInfo& f) { return f.id == id; });
  if (it == reg.end()) {
    io.err << "unknown figure id '" << id << "'; valid ids:";
    for (const FigureInfo& f : reg) io.err << ' ' << f.id;
    io.err << '\n';
    return kExitInvalidConfig;
  }
  const FigureBundle bundle = it->build();
  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream f(out_dir / name, std::ios::binary);
    f << content;
    if (!f) throw Error("cannot write " + (out_dir / name).string());
  };
  for (const OutputFile& f : bundle.files) write(f.name, f.content);
  write("manifest.txt", render_manifest(id, bundle));
  if (!io.quiet) {
    for (const OutputFile& f : bundle.files) io.out << (out_dir / f.name).string() << '\n';
    io.out << (out_dir / "manifest.txt").string() << '\n';
  }
  return kExitOk;
}

}  // namespace steerkit::cli
