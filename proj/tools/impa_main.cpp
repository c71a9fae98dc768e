#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "impa/pipeline.hpp"

namespace {

void add_common_flags(CLI::App* cmd, impa::RunConfig* config,
                      std::string* grid_text) {
  cmd->add_option("--out", config->out_dir, "Output directory")
      ->default_val(".");
  cmd->add_option("--grid", *grid_text,
                  "Sweep grid start,stop,points (hertz for gain sweeps, "
                  "phi/phi0 for flux sweeps)");
  cmd->add_option("--threshold-db", config->threshold_db,
                  "Gain threshold / calibration target in dB")
      ->default_val(15.0);
  cmd->add_flag("--timestamp", config->emit_timestamp,
                "Stamp generated reports with the UTC time");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "impa: flux-tunable JPA matching-network design and simulation"};
  app.require_subcommand(1);

  impa::RunConfig config;
  std::string grid_text;
  std::string alpha_text;
  if (const char* table = std::getenv("IMPA_SYNTH_TABLE")) {
    config.table_path = table;
  }

  CLI::App* design = app.add_subcommand(
      "design", "Synthesize and calibrate a matching network; writes "
                "netlist.json and report.txt");
  design->add_option("--spec", config.spec_path, "Design spec JSON file")
      ->required();
  add_common_flags(design, &config, &grid_text);

  CLI::App* gain = app.add_subcommand(
      "gain", "Sweep reflection gain; writes gain.csv and band.txt");
  gain->add_option("--spec", config.spec_path,
                   "Design spec JSON file (synthesize + calibrate on the "
                   "fly)");
  gain->add_option("--netlist", config.netlist_path,
                   "Simulate an existing netlist JSON file");
  add_common_flags(gain, &config, &grid_text);

  CLI::App* flux = app.add_subcommand(
      "flux-sweep", "Sweep bare resonance vs flux; writes flux_sweep.csv");
  flux->add_option("--spec", config.spec_path, "Design spec JSON file")
      ->required();
  flux->add_option("--alpha-sweep", alpha_text,
                   "Comma-separated asymmetry values; writes "
                   "alpha_sweep.csv of tunable ranges instead");
  add_common_flags(flux, &config, &grid_text);

  CLI::App* calibrate = app.add_subcommand(
      "calibrate", "Calibrate the JPA negative resistance of a netlist; "
                   "writes netlist.json and calibration.txt");
  calibrate->add_option("--netlist", config.netlist_path,
                        "Netlist JSON file with the R placeholder")
      ->required();
  calibrate
      ->add_option("--spec", config.spec_path,
                   "Design spec JSON file providing the band")
      ->required();
  add_common_flags(calibrate, &config, &grid_text);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (!grid_text.empty()) {
      config.grid = impa::parse_grid_spec(grid_text);
    }
    if (!alpha_text.empty()) {
      std::istringstream in(alpha_text);
      std::string field;
      while (std::getline(in, field, ',')) {
        size_t used = 0;
        const double alpha = std::stod(field, &used);
        if (used != field.size()) {
          throw impa::SchemaError("alpha-sweep",
                                  "malformed value \"" + field + "\"");
        }
        config.alpha_sweep.push_back(alpha);
      }
    }
  } catch (const impa::SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (design->parsed()) return impa::cmd_design(config);
  if (gain->parsed()) return impa::cmd_gain(config);
  if (flux->parsed()) return impa::cmd_flux_sweep(config);
  if (calibrate->parsed()) return impa::cmd_calibrate(config);
  return 2;
}
