#include "impa/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace impa {

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string ghz(double hz) { return fmt("%.6f", hz / 1e9) + " GHz"; }
std::string mhz(double hz) { return fmt("%.3f", hz / 1e6) + " MHz"; }
std::string pf(double farads) { return fmt("%.6f", farads * 1e12) + " pF"; }
std::string ph(double henries) { return fmt("%.6f", henries * 1e12) + " pH"; }
std::string nh(double henries) { return fmt("%.6f", henries * 1e9) + " nH"; }
std::string ohm(double ohms) { return fmt("%.6f", ohms) + " ohm"; }
std::string db(double value) { return fmt("%.3f", value) + " dB"; }

const nlohmann::json& require(const nlohmann::json& obj,
                              const std::string& where, const char* key) {
  if (!obj.contains(key)) {
    throw SchemaError(where.empty() ? key : where + "." + key,
                      "missing field");
  }
  return obj[key];
}

double require_number(const nlohmann::json& obj, const std::string& where,
                      const char* key) {
  const nlohmann::json& v = require(obj, where, key);
  if (!v.is_number()) {
    throw SchemaError(where.empty() ? key : where + "." + key,
                      "must be a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw SchemaError(where.empty() ? key : where + "." + key,
                      "must be finite");
  }
  return x;
}

int require_integer(const nlohmann::json& obj, const std::string& where,
                    const char* key) {
  const nlohmann::json& v = require(obj, where, key);
  if (!v.is_number_integer()) {
    throw SchemaError(where.empty() ? key : where + "." + key,
                      "must be an integer");
  }
  return v.get<int>();
}

std::string timestamp_line(bool emit) {
  if (!emit) {
    return {};
  }
  std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot write " + path);
  }
  out << text;
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
  std::filesystem::path dir =
      config.out_dir.empty() ? "." : config.out_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory " + dir.string());
  }
  return dir;
}

void require_readable(const std::string& path, const char* what) {
  if (path.empty()) {
    throw SchemaError("", std::string(what) + " path missing");
  }
  std::ifstream probe(path);
  if (!probe) {
    throw IoError(std::string(what) + ": cannot open " + path);
  }
}

// Default frequency grid: 2001 points over f0*(1 +- 1.5 w), clipped away
// from DC for very wide fractional bandwidths.
GridSpec default_gain_grid(double f0, double w) {
  GridSpec grid;
  grid.start = std::max(f0 * (1.0 - 1.5 * w), 1e-3 * f0);
  grid.stop = f0 * (1.0 + 1.5 * w);
  grid.points = 2001;
  return grid;
}

constexpr int k_flux_grid_points = 101;

std::vector<FluxBias> flux_grid_from(const GridSpec& grid) {
  if (grid.points < 1) {
    throw SchemaError("grid", "flux grid needs at least 1 point");
  }
  if (grid.points > 1 && !(grid.start < grid.stop)) {
    throw SchemaError("grid", "flux grid needs start < stop");
  }
  std::vector<FluxBias> biases;
  biases.reserve(grid.points);
  if (grid.points == 1) {
    biases.push_back(FluxBias{grid.start});
    return biases;
  }
  const double step = (grid.stop - grid.start) / (grid.points - 1);
  for (int i = 0; i < grid.points; ++i) {
    biases.push_back(FluxBias{grid.start + i * step});
  }
  return biases;
}

int run_mapped(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const EmptyBandError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace

GridSpec parse_grid_spec(const std::string& text) {
  GridSpec grid;
  std::istringstream in(text);
  std::string field;
  std::vector<std::string> fields;
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  if (fields.size() != 3) {
    throw SchemaError("grid", "expected start,stop,points");
  }
  try {
    size_t used = 0;
    grid.start = std::stod(fields[0], &used);
    if (used != fields[0].size()) throw std::invalid_argument(fields[0]);
    grid.stop = std::stod(fields[1], &used);
    if (used != fields[1].size()) throw std::invalid_argument(fields[1]);
    grid.points = std::stoi(fields[2], &used);
    if (used != fields[2].size()) throw std::invalid_argument(fields[2]);
  } catch (const std::exception&) {
    throw SchemaError("grid", "malformed start,stop,points value \"" + text +
                                  "\"");
  }
  return grid;
}

DesignSpec design_spec_from_json(const std::string& text,
                                 const std::string& table_path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("design spec: ") + e.what());
  }
  if (!doc.is_object()) {
    throw SchemaError("", "design spec: top-level value must be an object");
  }
  const nlohmann::json& schema = require(doc, "", "schema");
  if (!schema.is_string() ||
      schema.get<std::string>() != "design-spec-v1") {
    throw SchemaError("schema", "expected \"design-spec-v1\"");
  }

  DesignSpec spec;
  const bool has_f0 = doc.contains("f0_hz");
  const bool has_w = doc.contains("fractional_bandwidth");
  const bool has_edges = doc.contains("band_edges_hz");
  if (has_edges) {
    if (has_f0 || has_w) {
      throw SchemaError("band_edges_hz",
                        "give either band_edges_hz or f0_hz + "
                        "fractional_bandwidth, not both");
    }
    const nlohmann::json& edges = doc["band_edges_hz"];
    if (!edges.is_array() || edges.size() != 2 || !edges[0].is_number() ||
        !edges[1].is_number()) {
      throw SchemaError("band_edges_hz", "must be an array [f1_hz, f2_hz]");
    }
    const double f1 = edges[0].get<double>();
    const double f2 = edges[1].get<double>();
    if (!(f1 > 0.0) || !(f2 > f1)) {
      throw SchemaError("band_edges_hz", "need 0 < f1 < f2");
    }
    const auto [f0, w] = f0_and_w_from_band_edges(f1, f2);
    spec.f0 = f0;
    spec.w = w;
  } else {
    if (!has_f0 || !has_w) {
      throw SchemaError("f0_hz",
                        "need f0_hz + fractional_bandwidth (or "
                        "band_edges_hz)");
    }
    spec.f0 = require_number(doc, "", "f0_hz");
    spec.w = require_number(doc, "", "fractional_bandwidth");
  }

  spec.z_port =
      doc.contains("z_port_ohms") ? require_number(doc, "", "z_port_ohms")
                                  : 50.0;
  spec.z2 = require_number(doc, "", "z2_ohms");
  spec.c1_shunt = require_number(doc, "", "c1_farads");

  const nlohmann::json& snail = require(doc, "", "snail");
  if (!snail.is_object()) {
    throw SchemaError("snail", "must be an object");
  }
  try {
    spec.snail = SnailParams::make(
        require_number(snail, "snail", "l_j_henries"),
        require_number(snail, "snail", "alpha"),
        require_integer(snail, "snail", "n_large"));
  } catch (const ContractViolation& e) {
    throw SchemaError("snail", e.what());
  }

  const nlohmann::json& bias = require(doc, "", "bias");
  if (!bias.is_object()) {
    throw SchemaError("bias", "must be an object");
  }
  spec.bias = FluxBias{require_number(bias, "bias", "phi_over_phi0")};

  const nlohmann::json& proto = require(doc, "", "prototype");
  if (!proto.is_object()) {
    throw SchemaError("prototype", "must be an object");
  }
  const int order = require_integer(proto, "prototype", "order");
  const double g_min_db = require_number(proto, "prototype", "g_min_db");
  const double ripple_db = require_number(proto, "prototype", "ripple_db");
  if (proto.contains("g")) {
    const nlohmann::json& g = proto["g"];
    if (!g.is_array()) {
      throw SchemaError("prototype.g", "must be an array");
    }
    PrototypeSpec row;
    row.order_n = order;
    row.g_min_db = g_min_db;
    row.ripple_db = ripple_db;
    for (size_t i = 0; i < g.size(); ++i) {
      if (!g[i].is_number()) {
        throw SchemaError("prototype.g[" + std::to_string(i) + "]",
                          "must be a number");
      }
      row.g.push_back(g[i].get<double>());
    }
    try {
      row.validate();
    } catch (const ContractViolation& e) {
      throw SchemaError("prototype", e.what());
    }
    spec.prototype = std::move(row);
  } else {
    std::vector<PrototypeSpec> extra;
    if (!table_path.empty()) {
      extra = load_prototype_table(table_path);
    }
    spec.prototype = prototype_lookup(order, g_min_db, ripple_db, extra);
  }
  return spec;
}

DesignSpec load_design_spec(const std::string& path,
                            const std::string& table_path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("design spec: cannot open " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return design_spec_from_json(text, table_path);
}

std::string render_design_report(const DesignSpec& spec,
                                 const Netlist& netlist, double r_calibrated,
                                 double threshold_db, const BandReport& band,
                                 const TunableRange& range,
                                 const std::vector<std::string>& warnings,
                                 const std::string& timestamp) {
  if (netlist.elements.size() != 6 ||
      !std::holds_alternative<SeriesCapacitor>(netlist.elements[1]) ||
      !std::holds_alternative<ShuntParallelLc>(netlist.elements[2]) ||
      !std::holds_alternative<SeriesCapacitor>(netlist.elements[3]) ||
      !std::holds_alternative<ShuntParallelLc>(netlist.elements[4])) {
    throw ContractViolation(
        "render_design_report: netlist is not the synthesized two-pole "
        "ladder");
  }
  const auto [f1, f2] = band_edges_from_w(spec.f0, spec.w);
  std::ostringstream out;
  out << "impedance-matched JPA design report\n";
  if (!timestamp.empty()) {
    out << "generated: " << timestamp << "\n";
  }
  out << "\n[target]\n";
  out << "  f0                 = " << ghz(spec.f0) << "\n";
  out << "  fractional bw      = " << fmt("%.9g", spec.w) << "\n";
  out << "  design band        = " << ghz(f1) << " .. " << ghz(f2) << " ("
      << mhz(f2 - f1) << ")\n";
  out << "  min in-band gain   = " << db(threshold_db) << "\n";
  out << "  prototype          = N=" << spec.prototype.order_n << ", "
      << db(spec.prototype.g_min_db) << " floor, "
      << db(spec.prototype.ripple_db) << " ripple, g = [";
  for (size_t i = 0; i < spec.prototype.g.size(); ++i) {
    out << (i ? ", " : "") << fmt("%.9g", spec.prototype.g[i]);
  }
  out << "]\n";
  out << "\n[snail]\n";
  out << "  l_j                = " << ph(spec.snail.l_j) << "\n";
  out << "  alpha              = " << fmt("%.9g", spec.snail.alpha) << "\n";
  out << "  n_large            = " << spec.snail.n_large << "\n";
  out << "  bias phi/phi0      = " << fmt("%.9g", spec.bias.phi_over_phi0)
      << "\n";

  const auto& r1 = std::get<ShuntParallelLc>(netlist.elements[4]);
  const auto& r2 = std::get<ShuntParallelLc>(netlist.elements[2]);
  const auto& c01 = std::get<SeriesCapacitor>(netlist.elements[1]);
  const auto& c12 = std::get<SeriesCapacitor>(netlist.elements[3]);
  out << "\n[netlist]\n";
  out << "  port z0            = " << ohm(spec.z_port) << "\n";
  out << "  C01 (port coupler) = " << pf(c01.c) << "\n";
  out << "  resonator 2        = L " << nh(r2.l) << ", C " << pf(r2.c)
      << "\n";
  out << "  C12 (res coupler)  = " << pf(c12.c) << "\n";
  out << "  resonator 1 (JPA)  = L " << ph(r1.l) << ", C " << pf(r1.c)
      << "\n";
  out << "  calibrated R       = " << ohm(r_calibrated) << "\n";
  out << "\n[predicted response]\n";
  out << "  band (>= " << fmt("%.9g", threshold_db) << " dB)  = "
      << ghz(band.f_low) << " .. " << ghz(band.f_high) << "\n";
  out << "  bandwidth          = " << mhz(band.bandwidth) << "\n";
  out << "  min in-band gain   = " << db(band.min_gain_db) << "\n";
  out << "  max in-band gain   = " << db(band.max_gain_db) << "\n";
  out << "  in-band ripple     = " << db(band.ripple_db) << "\n";
  out << "\n[tunable range]\n";
  out << "  f_min              = " << ghz(range.f_min) << "\n";
  out << "  f_max              = " << ghz(range.f_max) << "\n";
  out << "\n[warnings]\n";
  if (warnings.empty()) {
    out << "  none\n";
  } else {
    for (const std::string& w : warnings) {
      out << "  - " << w << "\n";
    }
  }
  return out.str();
}

std::string render_band_report(const BandReport& band, double threshold_db,
                               const std::string& timestamp) {
  std::ostringstream out;
  out << "gain band report\n";
  if (!timestamp.empty()) {
    out << "generated: " << timestamp << "\n";
  }
  out << "  threshold          = " << db(threshold_db) << "\n";
  out << "  band               = " << ghz(band.f_low) << " .. "
      << ghz(band.f_high) << "\n";
  out << "  bandwidth          = " << mhz(band.bandwidth) << "\n";
  out << "  min in-band gain   = " << db(band.min_gain_db) << "\n";
  out << "  max in-band gain   = " << db(band.max_gain_db) << "\n";
  out << "  in-band ripple     = " << db(band.ripple_db) << "\n";
  return out.str();
}

int cmd_design(const RunConfig& config) {
  return run_mapped([&] {
    require_readable(config.spec_path, "design spec");
    const std::filesystem::path out_dir = prepare_out_dir(config);
    const DesignSpec spec =
        load_design_spec(config.spec_path, config.table_path);

    Netlist netlist = synthesize(spec);
    // Persist the synthesized ladder first so a failed calibration still
    // leaves the element values on disk for inspection.
    write_netlist_file((out_dir / "netlist.json").string(), netlist);
    const auto band_edges = band_edges_from_w(spec.f0, spec.w);
    const double r = calibrate_negative_resistance(
        netlist, spec.f0, config.threshold_db, band_edges);
    set_jpa_resistance(netlist, r);
    write_netlist_file((out_dir / "netlist.json").string(), netlist);

    const GridSpec grid =
        config.grid ? *config.grid : default_gain_grid(spec.f0, spec.w);
    const FrequencyResponse resp =
        sweep(netlist, grid.start, grid.stop, grid.points);
    const BandReport band = band_report(resp, config.threshold_db);

    std::vector<FluxBias> flux_grid;
    for (int i = 0; i < k_flux_grid_points; ++i) {
      flux_grid.push_back(FluxBias{0.5 * i / (k_flux_grid_points - 1)});
    }
    const TunableRange range =
        tunable_range(spec.snail, spec.c1_shunt, flux_grid);

    const std::string report = render_design_report(
        spec, netlist, r, config.threshold_db, band, range,
        realizability_warnings(spec), timestamp_line(config.emit_timestamp));
    write_text_file((out_dir / "report.txt").string(), report);
    std::cout << report;
  });
}

int cmd_gain(const RunConfig& config) {
  return run_mapped([&] {
    const std::filesystem::path out_dir = prepare_out_dir(config);

    Netlist netlist;
    GridSpec grid;
    double threshold = config.threshold_db;
    if (!config.netlist_path.empty()) {
      require_readable(config.netlist_path, "netlist");
      netlist = read_netlist_file(config.netlist_path);
      if (config.grid) {
        grid = *config.grid;
      } else if (!config.spec_path.empty()) {
        require_readable(config.spec_path, "design spec");
        const DesignSpec spec =
            load_design_spec(config.spec_path, config.table_path);
        grid = default_gain_grid(spec.f0, spec.w);
      } else {
        throw SchemaError("grid",
                          "--grid (or --spec for the default band) is "
                          "required with --netlist");
      }
    } else {
      require_readable(config.spec_path, "design spec");
      const DesignSpec spec =
          load_design_spec(config.spec_path, config.table_path);
      netlist = synthesize(spec);
      const double r = calibrate_negative_resistance(
          netlist, spec.f0, threshold, band_edges_from_w(spec.f0, spec.w));
      set_jpa_resistance(netlist, r);
      grid = config.grid ? *config.grid
                         : default_gain_grid(spec.f0, spec.w);
    }

    const FrequencyResponse resp =
        sweep(netlist, grid.start, grid.stop, grid.points);
    write_response_csv((out_dir / "gain.csv").string(), resp);

    const BandReport band = band_report(resp, threshold);  // may throw: 4
    const std::string text = render_band_report(
        band, threshold, timestamp_line(config.emit_timestamp));
    write_text_file((out_dir / "band.txt").string(), text);
    std::cout << text;
  });
}

int cmd_flux_sweep(const RunConfig& config) {
  return run_mapped([&] {
    require_readable(config.spec_path, "design spec");
    const std::filesystem::path out_dir = prepare_out_dir(config);
    const DesignSpec spec =
        load_design_spec(config.spec_path, config.table_path);

    const GridSpec grid =
        config.grid ? *config.grid : GridSpec{0.0, 0.5, k_flux_grid_points};
    const std::vector<FluxBias> biases = flux_grid_from(grid);

    if (!config.alpha_sweep.empty()) {
      std::vector<std::vector<double>> rows;
      for (double alpha : config.alpha_sweep) {
        const SnailParams params =
            SnailParams::make(spec.snail.l_j, alpha, spec.snail.n_large);
        const TunableRange range =
            tunable_range(params, spec.c1_shunt, biases);
        rows.push_back(
            {alpha, range.f_min, range.f_max, range.f_max - range.f_min});
        std::cout << "alpha = " << fmt("%.9g", alpha)
                  << ": f_min = " << fmt("%.9g", range.f_min)
                  << " Hz, f_max = " << fmt("%.9g", range.f_max)
                  << " Hz, range = " << fmt("%.9g",
                                            range.f_max - range.f_min)
                  << " Hz\n";
      }
      write_table_csv((out_dir / "alpha_sweep.csv").string(),
                      {"alpha", "f_min_hz", "f_max_hz", "range_hz"}, rows);
      return;
    }

    TunableRange range;
    try {
      range = tunable_range(spec.snail, spec.c1_shunt, biases);
    } catch (const SolverError& e) {
      // Re-scan point by point so the failing flux value is named.
      for (const FluxBias& b : biases) {
        try {
          bare_frequency(spec.snail, b, spec.c1_shunt);
        } catch (const SolverError& inner) {
          throw SolverError("flux sweep failed at phi/phi0 = " +
                                fmt("%.9g", b.phi_over_phi0) + ": " +
                                inner.what(),
                            inner.last_residual);
        }
      }
      throw;  // failure not reproducible point-wise; report the original
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(range.curve.size());
    for (const auto& [phi, f] : range.curve) {
      rows.push_back({phi, f});
    }
    write_table_csv((out_dir / "flux_sweep.csv").string(),
                    {"phi_over_phi0", "f_bare_hz"}, rows);
    std::cout << "flux sweep: " << rows.size()
              << " points, f_min = " << fmt("%.9g", range.f_min)
              << " Hz, f_max = " << fmt("%.9g", range.f_max) << " Hz\n";
  });
}

int cmd_calibrate(const RunConfig& config) {
  return run_mapped([&] {
    require_readable(config.netlist_path, "netlist");
    require_readable(config.spec_path, "design spec");
    const std::filesystem::path out_dir = prepare_out_dir(config);

    Netlist netlist = read_netlist_file(config.netlist_path);
    const DesignSpec spec =
        load_design_spec(config.spec_path, config.table_path);
    const auto band = band_edges_from_w(spec.f0, spec.w);
    const double r = calibrate_negative_resistance(
        netlist, spec.f0, config.threshold_db, band);
    set_jpa_resistance(netlist, r);
    write_netlist_file((out_dir / "netlist.json").string(), netlist);

    const FrequencyResponse resp =
        sweep(netlist, band.first, band.second, 801);
    double achieved = resp.gain_db.front();
    for (double g : resp.gain_db) {
      achieved = std::min(achieved, g);
    }
    std::ostringstream text;
    text << "negative-resistance calibration\n";
    const std::string ts = timestamp_line(config.emit_timestamp);
    if (!ts.empty()) {
      text << "generated: " << ts << "\n";
    }
    text << "  band               = " << ghz(band.first) << " .. "
         << ghz(band.second) << "\n";
    text << "  target min gain    = " << db(config.threshold_db) << "\n";
    text << "  calibrated R       = " << ohm(r) << "\n";
    text << "  achieved min gain  = " << db(achieved) << "\n";
    write_text_file((out_dir / "calibration.txt").string(), text.str());
    std::cout << text.str();
  });
}

}  // namespace impa
