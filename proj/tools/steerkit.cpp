#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "steerkit/cli/commands.hpp"
#include "steerkit/cli/figures.hpp"

namespace sk = steerkit;
namespace cli = steerkit::cli;

namespace {

cli::ScenarioConfig load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::ConfigError(0, "cannot open " + path);
  return cli::parse_config(in);
}

int run(const std::function<int()>& body) {
  try {
    return body();
  } catch (const cli::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInvalidConfig;
  } catch (const sk::InvalidParams& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInvalidConfig;
  } catch (const sk::NoSteadyState& e) {
    std::cerr << "error: " << e.what() << '\n';
    cli::write_stability(std::cerr, e.report());
    return cli::kExitUnstable;
  } catch (const sk::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitNumeric;
  } catch (const sk::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian EPR steering for two cavities coupled through a mechanical mode"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string format = "text";
  bool quiet = false;
  std::string figure_id;

  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "scenario config file");
    if (needs_config) opt->required();
    sub->add_option("--out", out_path, "output file (directory for reproduce)");
    sub->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}));
    sub->add_flag("--quiet", quiet, "suppress warnings and progress");
  };

  auto* steady = app.add_subcommand("steady", "steady-state moments and steering");
  auto* evolve = app.add_subcommand("evolve", "time series from the evolve block");
  auto* spectra = app.add_subcommand("spectra", "output-field spectra");
  auto* sweep = app.add_subcommand("sweep", "grid sweep or minimized frontier");
  auto* check = app.add_subcommand("check", "closed-form condition report");
  auto* reproduce = app.add_subcommand("reproduce", "write the data behind one figure");
  for (auto* sub : {steady, evolve, spectra, sweep, check}) add_common(sub, true);
  add_common(reproduce, false);
  reproduce->add_option("figure_id", figure_id, "figure id (2a 2b 2c 2d 3a 3b 4a 4b 5a 5b 6)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitInvalidConfig;
  }

  return run([&]() -> int {
    if (reproduce->parsed()) {
      cli::Io io{std::cout, std::cerr, cli::Format::csv, quiet};
      return cli::cmd_reproduce(figure_id, out_path.empty() ? "." : out_path, io);
    }
    const cli::ScenarioConfig cfg = load(config_path);
    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path, std::ios::binary);
      if (!file) throw sk::Error("cannot open " + out_path + " for writing");
    }
    std::ostream& out = out_path.empty() ? std::cout : file;
    cli::Io io{out, std::cerr, format == "csv" ? cli::Format::csv : cli::Format::text, quiet};
    if (steady->parsed()) return cli::cmd_steady(cfg, io);
    if (evolve->parsed()) return cli::cmd_evolve(cfg, io);
    if (spectra->parsed()) return cli::cmd_spectra(cfg, io);
    if (sweep->parsed()) return cli::cmd_sweep(cfg, io);
    return cli::cmd_check(cfg, io);
  });
}
