// csusy: build and verify complex SUSY partner potentials from a config.
//
//   csusy run <config> [--out-dir DIR]     checks + CSV files + summary.txt
//   csusy verify <config>                  checks only, summary on stdout
//   csusy preset <name> [--emit-config]    figure parameter sets
//
// Exit status: 0 all checks pass, 1 a check failed (named on stderr),
// 2 configuration error.

#include "csusy/config.hpp"
#include "csusy/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

int report(const csusy::PipelineResult& result) {
  if (const csusy::Check* failed = result.first_failure()) {
    std::cerr << "csusy: check failed: " << failed->name;
    if (!failed->note.empty()) std::cerr << " (" << failed->note << ")";
    std::cerr << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Complex SUSY partner potentials from Ermakov-parameterised Darboux transforms"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  auto* run = app.add_subcommand("run", "Run the pipeline and write CSV data and summary.txt");
  run->add_option("config", config_path, "Configuration file")->required();
  run->add_option("--out-dir", out_dir, "Output directory (created if missing)");

  auto* verify = app.add_subcommand("verify", "Run every check without writing data files");
  verify->add_option("config", config_path, "Configuration file")->required();

  std::string preset_name;
  bool emit = false;
  auto* preset = app.add_subcommand("preset", "Run or print a figure preset");
  preset->add_option("name", preset_name, "fig1 | fig1-shifted | fig3 | fig3-alt")->required();
  preset->add_flag("--emit-config", emit, "Print the preset configuration instead of running it");
  preset->add_option("--out-dir", out_dir, "Output directory (created if missing)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*preset) {
      const csusy::RunConfig cfg = csusy::preset(preset_name);
      if (emit) {
        std::cout << csusy::emit_config(cfg);
        return 0;
      }
      const auto result = csusy::run_pipeline(cfg);
      csusy::write_outputs(result, out_dir);
      std::cout << csusy::summary_text(result);
      return report(result);
    }
    const csusy::RunConfig cfg = csusy::load_config(config_path);
    const auto result = csusy::run_pipeline(cfg);
    if (*run) csusy::write_outputs(result, out_dir);
    std::cout << csusy::summary_text(result);
    return report(result);
  } catch (const csusy::ConfigError& e) {
    std::cerr << "csusy: config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "csusy: check failed: run (" << e.what() << ")\n";
    return 1;
  }
}
