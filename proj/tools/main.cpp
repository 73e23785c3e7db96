#include "qbcharge/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonFlags {
  std::string out_dir = ".";
  std::optional<int> cutoff;
  std::optional<double> stabilization_band;
  std::string dissipator;
  std::string channel_basis;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
  cmd.add_option("--cutoff", f.cutoff, "Fock cutoff per mode")->check(CLI::Range(2, 64));
  cmd.add_option("--stabilization-band", f.stabilization_band, "Relative band for the stabilization time");
  cmd.add_option("--dissipator", f.dissipator, "paper-literal | transition-frequency")
      ->check(CLI::IsMember({"paper-literal", "transition-frequency"}));
  cmd.add_option("--channel-basis", f.channel_basis, "static | rotating")->check(CLI::IsMember({"static", "rotating"}));
}

qbcharge::Overrides overrides_from(const CommonFlags& f) {
  qbcharge::Overrides o;
  o.cutoff = f.cutoff;
  o.stabilization_band = f.stabilization_band;
  if (!f.dissipator.empty()) o.dissipator = qbcharge::parse_dissipator_mode(f.dissipator);
  if (!f.channel_basis.empty()) o.channel_basis = qbcharge::parse_channel_basis(f.channel_basis);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charging dynamics and ergotropy of a planar quantum battery"};
  app.set_version_flag("--version", QBCHARGE_VERSION_STRING);
  app.require_subcommand(1);

  CommonFlags run_flags;
  std::string config_path;
  CLI::App* run = app.add_subcommand("run", "Integrate one configuration");
  run->add_option("config", config_path, "Run config (JSON)")->required();
  add_common(*run, run_flags);

  CommonFlags sweep_flags;
  std::string spec_path;
  unsigned workers = 0;
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("spec", spec_path, "Sweep spec (JSON)")->required();
  sweep->add_option("--workers", workers, "Parallel sweep points (0 = hardware threads)")->capture_default_str();
  add_common(*sweep, sweep_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qbcharge::kExitConfig;
  }

  try {
    if (*run) return qbcharge::run_single(config_path, run_flags.out_dir, overrides_from(run_flags), std::cerr);
    return qbcharge::run_sweep(spec_path, sweep_flags.out_dir, overrides_from(sweep_flags), workers, std::cerr);
  } catch (const qbcharge::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qbcharge::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return qbcharge::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return qbcharge::kExitUsage;
  }
}
