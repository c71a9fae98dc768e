#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include "impa/errors.hpp"

namespace impa {

// Flux-tunable SNAIL: a superconducting loop of n_large large Josephson
// junctions in parallel with one smaller junction (area ratio alpha).
// Reduced potential, phi the phase across the small junction:
//
//   U(phi) = -alpha*cos(phi) - n*cos((phi - phi_ext)/n)
//
// For alpha < 1/n the potential has a single minimum per flux period and the
// element behaves as a flux-tunable inductor with third-order (three-wave
// mixing) nonlinearity away from integer and half-integer flux.
struct SnailParams {
  double l_j = 0.0;          // single large-junction inductance, henries
  double alpha = 0.0;        // junction asymmetry, 0 < alpha <= 1/n_large
  int n_large = 0;           // number of large junctions in the loop
  bool boundary_alpha = false;  // alpha sits exactly on the 1/n_large boundary

  // Validates ranges; alpha == 1/n_large is accepted but flagged so callers
  // can warn that the minimum flattens at half-integer flux.
  static SnailParams make(double l_j, double alpha, int n_large);
};

// External flux threading the loop, in units of the flux quantum.
struct FluxBias {
  double phi_over_phi0 = 0.0;

  // Reduced external phase, radians.
  double phi_ext() const { return 2.0 * std::numbers::pi * phi_over_phi0; }
};

// d^order U / d phi^order evaluated at phi. order must be 1..4.
double potential_derivative(const SnailParams& params, double phi,
                            double phi_ext, int order);

// Location of the potential minimum on the continuous branch, i.e. the branch
// with phi_min(0) = 0 that follows the minimum smoothly as the flux varies
// (no jumps between wells). Satisfies phi_min(phi_ext + 2*pi) =
// phi_min(phi_ext) + 2*pi and phi_min(-phi_ext) = -phi_min(phi_ext).
// Residual |U'(phi_min)| < 1e-12; throws SolverError otherwise.
double solve_phi_min(const SnailParams& params, const FluxBias& bias);

// Taylor expansion of U about phi_min: c_k = d^k U / d phi^k (phi_min).
// c2 sets the linear inductance, c3 the three-wave mixing strength, c4 the
// Kerr shift. l_s = l_j / c2.
struct FluxOperatingPoint {
  FluxBias bias;
  double phi_min = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;
  double c4 = 0.0;
  double l_s = 0.0;  // effective SNAIL inductance, henries
};

// Solves for phi_min and expands the potential there. Throws
// DegenerateMinimumError when the curvature at the stationary point is <= 0
// (only reachable on the alpha == 1/n_large boundary at half-integer flux).
FluxOperatingPoint operating_point(const SnailParams& params,
                                   const FluxBias& bias);

// Resonance of the SNAIL inductance against a fixed shunt capacitance:
// f = 1 / (2*pi*sqrt(l_s * c_shunt)).
double bare_frequency(const SnailParams& params, const FluxBias& bias,
                      double c_shunt);

struct TunableRange {
  double f_min = 0.0;  // Hz
  double f_max = 0.0;  // Hz
  std::vector<std::pair<double, double>> curve;  // (phi_over_phi0, f_bare)
};

// Bare frequency over a flux grid. The grid must be non-empty and span at
// most one flux period; any point where the minimum solve fails fails the
// whole sweep.
TunableRange tunable_range(const SnailParams& params, double c_shunt,
                           const std::vector<FluxBias>& grid);

// Picks the bias for three-wave-mixing operation: among grid points with
// c4 < 0 (negative Kerr), the one with the largest |c3|. Ties go to the
// smaller |phi_over_phi0|, then to the non-negative bias, then to grid
// order. Throws NotFoundError when no grid point has c4 < 0.
FluxBias find_3wm_operating_point(const SnailParams& params,
                                  const std::vector<FluxBias>& grid);

}  // namespace impa
