#pragma once

#include <optional>
#include <string>
#include <vector>

#include "impa/ac.hpp"
#include "impa/csv.hpp"
#include "impa/synthesis.hpp"

namespace impa {

struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

// Options shared by the subcommands. `table_path` comes from the
// IMPA_SYNTH_TABLE environment variable; `grid` is frequency (hertz) for
// gain sweeps and flux (phi/phi0) for flux sweeps.
struct RunConfig {
  std::string spec_path;
  std::string netlist_path;
  std::string out_dir = ".";
  std::optional<GridSpec> grid;
  double threshold_db = 15.0;
  std::vector<double> alpha_sweep;
  std::string table_path;
  bool emit_timestamp = false;
};

// Parses "start,stop,points".
GridSpec parse_grid_spec(const std::string& text);

// Loads and validates a design-spec JSON file (schema "design-spec-v1").
// The document provides either f0_hz + fractional_bandwidth or
// band_edges_hz; the prototype is given inline (field "g") or looked up in
// the built-in table plus the optional user table at `table_path`.
DesignSpec load_design_spec(const std::string& path,
                            const std::string& table_path = {});
DesignSpec design_spec_from_json(const std::string& text,
                                 const std::string& table_path = {});

// Human-readable design summary; every numeric value carries an SI unit.
// Byte-identical for identical inputs (timestamp left empty).
std::string render_design_report(const DesignSpec& spec,
                                 const Netlist& netlist, double r_calibrated,
                                 double threshold_db, const BandReport& band,
                                 const TunableRange& range,
                                 const std::vector<std::string>& warnings,
                                 const std::string& timestamp);

std::string render_band_report(const BandReport& band, double threshold_db,
                               const std::string& timestamp);

// Subcommand drivers; return the process exit code:
//   0 success, 2 input/schema, 3 computation, 4 empty band.
int cmd_design(const RunConfig& config);
int cmd_gain(const RunConfig& config);
int cmd_flux_sweep(const RunConfig& config);
int cmd_calibrate(const RunConfig& config);

}  // namespace impa
