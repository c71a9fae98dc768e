#pragma once

#include <string>
#include <utility>
#include <vector>

#include "impa/chebyshev.hpp"
#include "impa/netlist.hpp"
#include "impa/snail.hpp"

namespace impa {

// Everything needed to synthesize the two-pole matching ladder around the
// flux-biased SNAIL resonator.
struct DesignSpec {
  double f0 = 0.0;        // design center frequency, Hz
  double w = 0.0;         // fractional bandwidth (f2 - f1)/f0
  PrototypeSpec prototype;
  double z_port = 50.0;   // ohms
  SnailParams snail;
  FluxBias bias;
  double c1_shunt = 0.0;  // JPA shunt capacitance, farads
  double z2 = 0.0;        // second-resonator characteristic impedance, ohms

  void validate() const;  // throws ContractViolation
};

// Characteristic impedance of a shunt resonator with capacitance c at f0:
// Z = 1/(2*pi*f0*c).
double resonator_impedance_from_c(double f0, double c);

// Admittance-inverter constant between adjacent resonators:
// J_ij = w / sqrt(g_i g_j Z_i Z_j).
double inverter_constant(double w, double g_i, double g_j, double z_i,
                         double z_j);

// Terminating inverter between the resistive port and the first resonator.
// The band-scaling factor w sits under the root here:
//   J = sqrt(w * G_port * b_res / (g_i g_j)) = sqrt(w / (g_i g_j z_port z_res))
// (G_port = 1/z_port, slope parameter b_res = 1/z_res).
double port_inverter_constant(double w, double g_i, double g_j, double z_port,
                              double z_res);

// Inverter realized as a coupling capacitor: C_ij = J_ij / (2*pi*f0).
double coupling_capacitance(double j, double f0);

// Geometric-symmetric band edges: f1 = f0*(sqrt(1 + w^2/4) - w/2),
// f2 = f0*(sqrt(1 + w^2/4) + w/2), so sqrt(f1*f2) = f0 and (f2-f1)/f0 = w.
std::pair<double, double> band_edges_from_w(double f0, double w);

// Fractional bandwidth from explicit edges; the center is their geometric
// mean.
std::pair<double, double> f0_and_w_from_band_edges(double f1, double f2);

// The resistance value synthesize() leaves on the JPA shunt resistor before
// calibration; large enough to be electrically inert.
inline constexpr double k_placeholder_resistance = -1e12;

// Builds the ladder
//   Port(z_port) - SeriesC(C01) - ShuntLC(L2, C2') - SeriesC(C12)
//   - ShuntLC(l_s, C1') - ShuntR(placeholder)
// with C2 = 1/(omega0*z2), L2 = z2/omega0, the inverters realized as
// coupling capacitors, and the coupling values absorbed into the adjacent
// shunt capacitors: C2' = C2 - C01 - C12, C1' = c1_shunt - C12.
Netlist synthesize(const DesignSpec& spec);

// Advisory notes on the synthesized design: resonator impedances outside
// the 15..150 ohm window practical for distributed realizations, and the
// boundary-asymmetry flag on the SNAIL.
std::vector<std::string> realizability_warnings(const DesignSpec& spec);

}  // namespace impa
