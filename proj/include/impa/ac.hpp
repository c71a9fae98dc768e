#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "impa/netlist.hpp"

namespace impa {

// Chain (transmission) matrix of a two-port. b carries ohms, c siemens.
// Reciprocal elements satisfy a*d - b*c = 1.
struct TwoPortAbcd {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};
  std::complex<double> c{0.0, 0.0};
  std::complex<double> d{1.0, 0.0};

  std::complex<double> determinant() const { return a * d - b * c; }
};

// ABCD of a single ladder element at frequency f (hertz, > 0).
// SeriesCapacitor: [[1, 1/(j w C)], [0, 1]]; ShuntParallelLc: [[1, 0],
// [Y, 1]] with Y = j(wC - 1/(wL)); ShuntResistor: [[1, 0], [1/R, 1]].
// PortTermination has no two-port representation.
TwoPortAbcd abcd_of_element(const NetlistElement& element, double f);

// Ordered product, port-side first.
TwoPortAbcd cascade(const std::vector<TwoPortAbcd>& parts);

// Impedance looking into the ladder from the port node, the chain beyond
// the last element open: Z_in = a/c. Returns nullopt as the
// infinite-impedance sentinel when c == 0 (purely series chain into the
// open end).
std::optional<std::complex<double>> input_impedance(const Netlist& netlist,
                                                    double f);

// Gamma = (z_in - z0)/(z_in + z0); the sentinel maps to exactly 1.
// Throws PoleError when z_in == -z0 exactly (oscillation condition).
std::complex<double> reflection(
    const std::optional<std::complex<double>>& z_in, double z0);

struct FrequencyResponse {
  std::vector<double> freqs;                 // strictly increasing, Hz
  std::vector<std::complex<double>> gamma;   // reflection coefficient
  std::vector<double> gain_db;               // 20*log10|gamma|
  std::vector<bool> pole;                    // oscillation marker per point
};

// Uniform grid sweep; pole errors are recorded per point (gamma and gain
// set to +infinity) and the sweep completes.
FrequencyResponse sweep(const Netlist& netlist, double f_start, double f_stop,
                        int n_points);

struct BandReport {
  double f_low = 0.0;        // Hz
  double f_high = 0.0;       // Hz
  double bandwidth = 0.0;    // Hz
  double min_gain_db = 0.0;  // over grid points inside the band
  double max_gain_db = 0.0;
  double ripple_db = 0.0;    // max - min
};

// Widest contiguous interval with gain_db >= threshold_db. Edge crossings
// are linearly interpolated (dB against hertz); min/max/ripple are taken
// over the grid points inside the interval. Throws EmptyBandError when no
// point qualifies.
BandReport band_report(const FrequencyResponse& resp, double threshold_db);

// Finds R < 0 on the JPA shunt resistor such that the minimum gain over
// [band.first, band.second] equals target_min_gain_db (within 0.05 dB,
// internally much tighter). Walks |R| down a geometric ladder from the
// nearly-inert placeholder value, brackets the target on the stable
// monotone segment, then bisects in log|R|. Throws CalibrationError, with
// the best achievable minimum gain, when the oscillation threshold is
// crossed first; the calibrated netlist is verified pole-free across the
// band at 4x resolution.
double calibrate_negative_resistance(const Netlist& netlist, double f0,
                                     double target_min_gain_db,
                                     std::pair<double, double> band);

}  // namespace impa
