#include "impa/synthesis.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace impa {

namespace {
constexpr double k_two_pi = 2.0 * std::numbers::pi;
// Coupling capacitors below this are not physically meaningful.
constexpr double k_min_coupling_farads = 1e-18;
}  // namespace

void DesignSpec::validate() const {
  if (!(f0 > 0.0)) {
    throw ContractViolation("DesignSpec: f0 must be positive");
  }
  if (!(w > 0.0) || !(w < 1.0)) {
    throw ContractViolation("DesignSpec: fractional bandwidth must lie in "
                            "(0, 1)");
  }
  if (!(z_port > 0.0)) {
    throw ContractViolation("DesignSpec: z_port must be positive");
  }
  if (!(z2 > 0.0)) {
    throw ContractViolation("DesignSpec: z2 must be positive");
  }
  if (!(c1_shunt > 0.0)) {
    throw ContractViolation("DesignSpec: c1_shunt must be positive");
  }
  prototype.validate();
}

double resonator_impedance_from_c(double f0, double c) {
  if (!(f0 > 0.0) || !(c > 0.0)) {
    throw ContractViolation(
        "resonator_impedance_from_c: inputs must be positive");
  }
  return 1.0 / (k_two_pi * f0 * c);
}

double inverter_constant(double w, double g_i, double g_j, double z_i,
                         double z_j) {
  if (!(w > 0.0) || !(g_i > 0.0) || !(g_j > 0.0) || !(z_i > 0.0) ||
      !(z_j > 0.0)) {
    throw ContractViolation("inverter_constant: inputs must be positive");
  }
  return w / std::sqrt(g_i * g_j * z_i * z_j);
}

double port_inverter_constant(double w, double g_i, double g_j, double z_port,
                              double z_res) {
  if (!(w > 0.0) || !(g_i > 0.0) || !(g_j > 0.0) || !(z_port > 0.0) ||
      !(z_res > 0.0)) {
    throw ContractViolation("port_inverter_constant: inputs must be positive");
  }
  return std::sqrt(w / (g_i * g_j * z_port * z_res));
}

double coupling_capacitance(double j, double f0) {
  if (!(j > 0.0) || !(f0 > 0.0)) {
    throw ContractViolation("coupling_capacitance: inputs must be positive");
  }
  return j / (k_two_pi * f0);
}

std::pair<double, double> band_edges_from_w(double f0, double w) {
  if (!(f0 > 0.0)) {
    throw ContractViolation("band_edges_from_w: f0 must be positive");
  }
  if (!(w >= 0.0) || !(w < 2.0)) {
    throw ContractViolation("band_edges_from_w: w must lie in [0, 2)");
  }
  const double s = std::sqrt(1.0 + 0.25 * w * w);
  return {f0 * (s - 0.5 * w), f0 * (s + 0.5 * w)};
}

std::pair<double, double> f0_and_w_from_band_edges(double f1, double f2) {
  if (!(f1 > 0.0) || !(f2 > f1)) {
    throw ContractViolation(
        "f0_and_w_from_band_edges: need 0 < f1 < f2");
  }
  const double f0 = std::sqrt(f1 * f2);
  return {f0, (f2 - f1) / f0};
}

Netlist synthesize(const DesignSpec& spec) {
  spec.validate();
  if (spec.prototype.order_n != 2) {
    throw SynthesisError(
        "synthesize: the two-pole ladder requires a prototype of order 2");
  }

  const double omega0 = k_two_pi * spec.f0;
  const FluxOperatingPoint op = operating_point(spec.snail, spec.bias);

  const double c2_res = 1.0 / (omega0 * spec.z2);
  const double l2 = spec.z2 / omega0;
  const double z1 = resonator_impedance_from_c(spec.f0, spec.c1_shunt);

  const double g1 = spec.prototype.g[0];
  const double g2 = spec.prototype.g[1];
  const double j01 =
      port_inverter_constant(spec.w, 1.0, g1, spec.z_port, spec.z2);
  const double j12 = inverter_constant(spec.w, g1, g2, z1, spec.z2);
  const double c01 = coupling_capacitance(j01, spec.f0);
  const double c12 = coupling_capacitance(j12, spec.f0);

  if (c01 < k_min_coupling_farads || c12 < k_min_coupling_farads) {
    std::ostringstream msg;
    msg << "synthesize: coupling capacitor below " << k_min_coupling_farads
        << " F (C01 = " << c01 << " F, C12 = " << c12
        << " F); bandwidth too small to realize";
    throw SynthesisError(msg.str());
  }

  const double c2_absorbed = c2_res - c01 - c12;
  if (!(c2_absorbed > 0.0)) {
    std::ostringstream msg;
    msg << "synthesize: absorption drives the resonator-2 shunt capacitance "
           "non-positive ("
        << c2_absorbed << " F)";
    throw SynthesisError(msg.str());
  }
  const double c1_absorbed = spec.c1_shunt - c12;
  if (!(c1_absorbed > 0.0)) {
    std::ostringstream msg;
    msg << "synthesize: absorption drives the JPA-node shunt capacitance "
           "non-positive ("
        << c1_absorbed << " F)";
    throw SynthesisError(msg.str());
  }

  Netlist netlist;
  netlist.elements = {
      PortTermination{spec.z_port},
      SeriesCapacitor{c01},
      ShuntParallelLc{l2, c2_absorbed},
      SeriesCapacitor{c12},
      ShuntParallelLc{op.l_s, c1_absorbed},
      ShuntResistor{k_placeholder_resistance},
  };
  netlist.validate();
  return netlist;
}

std::vector<std::string> realizability_warnings(const DesignSpec& spec) {
  std::vector<std::string> warnings;
  const double z1 = resonator_impedance_from_c(spec.f0, spec.c1_shunt);
  for (const auto& [name, z] :
       {std::pair<const char*, double>{"resonator 1", z1},
        std::pair<const char*, double>{"resonator 2", spec.z2}}) {
    std::ostringstream msg;
    if (z < 15.0) {
      msg << name << " impedance " << z
          << " ohm is below the 15 ohm floor for distributed lines; "
             "lumped realization required";
      warnings.push_back(msg.str());
    } else if (z > 150.0) {
      msg << name << " impedance " << z
          << " ohm exceeds the 150 ohm ceiling for distributed lines; "
             "lumped realization required";
      warnings.push_back(msg.str());
    }
  }
  if (spec.snail.boundary_alpha) {
    warnings.push_back(
        "SNAIL asymmetry sits on the 1/n boundary; the potential minimum "
        "flattens at half-integer flux");
  }
  return warnings;
}

}  // namespace impa
