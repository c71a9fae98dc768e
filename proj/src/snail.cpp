#include "impa/snail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace impa {

namespace {

constexpr double k_pi = std::numbers::pi;
constexpr int k_scan_samples = 1000;
constexpr double k_bisection_width = 1e-14;
constexpr double k_residual_tol = 1e-12;

double c1_of(const SnailParams& p, double phi, double phi_ext) {
  return potential_derivative(p, phi, phi_ext, 1);
}

// Bisection on U' over a sign-change bracket; converges unconditionally.
double bisect_root(const SnailParams& p, double phi_ext, double lo,
                   double hi) {
  double f_lo = c1_of(p, lo, phi_ext);
  for (int it = 0; it < 200 && (hi - lo) > k_bisection_width; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = c1_of(p, mid, phi_ext);
    if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Root of U' on the continuous branch for phi_ext in [0, pi]. The branch
// root is the one inside the central well, |phi_min - phi_ext| < n*pi/2:
// at the root alpha*sin(phi_min) = -sin((phi_min - phi_ext)/n), and with
// alpha < 1/n the magnitude of the right side forces the argument into
// (-pi/2, pi/2).
double branch_root(const SnailParams& p, double phi_ext) {
  const double n = p.n_large;
  const double lo = phi_ext - n * k_pi;
  const double hi = phi_ext + n * k_pi;
  const double step = (hi - lo) / (k_scan_samples - 1);

  double best = std::numeric_limits<double>::quiet_NaN();
  double best_psi = std::numeric_limits<double>::infinity();
  bool best_convex = false;

  double prev_phi = lo;
  double prev_val = c1_of(p, lo, phi_ext);
  for (int i = 1; i < k_scan_samples; ++i) {
    const double phi = lo + i * step;
    const double val = c1_of(p, phi, phi_ext);
    if ((prev_val <= 0.0) != (val <= 0.0) || val == 0.0) {
      const double root = bisect_root(p, phi_ext, prev_phi, phi);
      const double psi = std::abs((root - phi_ext) / n);
      if (psi < 0.5 * k_pi) {
        const bool convex = potential_derivative(p, root, phi_ext, 2) > 0.0;
        // Prefer a true minimum; among those the smallest |psi|.
        if ((convex && !best_convex) ||
            (convex == best_convex && psi < best_psi)) {
          best = root;
          best_psi = psi;
          best_convex = convex;
        }
      }
    }
    prev_phi = phi;
    prev_val = val;
  }

  if (!(best_psi < 0.5 * k_pi)) {
    throw SolverError("solve_phi_min: no stationary point on the continuous "
                      "branch",
                      std::numeric_limits<double>::quiet_NaN());
  }
  const double residual = c1_of(p, best, phi_ext);
  if (!(std::abs(residual) < k_residual_tol)) {
    std::ostringstream msg;
    msg << "solve_phi_min: residual " << residual
        << " above tolerance after bisection";
    throw SolverError(msg.str(), residual);
  }
  return best;
}

}  // namespace

SnailParams SnailParams::make(double l_j, double alpha, int n_large) {
  if (!(l_j > 0.0)) {
    throw ContractViolation("SnailParams: l_j must be positive");
  }
  if (n_large < 1) {
    throw ContractViolation("SnailParams: n_large must be at least 1");
  }
  const double limit = 1.0 / n_large;
  if (!(alpha > 0.0) || alpha > limit) {
    throw ContractViolation(
        "SnailParams: alpha must lie in (0, 1/n_large]");
  }
  SnailParams p;
  p.l_j = l_j;
  p.alpha = alpha;
  p.n_large = n_large;
  p.boundary_alpha = (alpha == limit);
  return p;
}

double potential_derivative(const SnailParams& params, double phi,
                            double phi_ext, int order) {
  const double n = params.n_large;
  const double psi = (phi - phi_ext) / n;
  switch (order) {
    case 1:
      return params.alpha * std::sin(phi) + std::sin(psi);
    case 2:
      return params.alpha * std::cos(phi) + std::cos(psi) / n;
    case 3:
      return -params.alpha * std::sin(phi) - std::sin(psi) / (n * n);
    case 4:
      return -params.alpha * std::cos(phi) - std::cos(psi) / (n * n * n);
    default:
      throw ContractViolation("potential_derivative: order must be 1..4");
  }
}

double solve_phi_min(const SnailParams& params, const FluxBias& bias) {
  // U is even in (phi, phi_ext) and 2*pi-periodic in phi_ext (period one
  // flux quantum), so the branch obeys phi_min(-x) = -phi_min(x) and
  // phi_min(x + 2*pi) = phi_min(x) + 2*pi. Reduce to phi_ext in [0, pi],
  // solve there, and map back; the symmetries then hold exactly in floating
  // point.
  const double whole = std::round(bias.phi_over_phi0);
  const double frac = bias.phi_over_phi0 - whole;  // in [-1/2, 1/2]
  const double sign = frac < 0.0 ? -1.0 : 1.0;
  const double phi_ext_reduced = 2.0 * k_pi * std::abs(frac);
  const double root = branch_root(params, phi_ext_reduced);
  return sign * root + 2.0 * k_pi * whole;
}

FluxOperatingPoint operating_point(const SnailParams& params,
                                   const FluxBias& bias) {
  // Expand in the reduced frame and map back so that c2, c4 are exactly even
  // and c3 exactly odd across equivalent biases.
  const double whole = std::round(bias.phi_over_phi0);
  const double frac = bias.phi_over_phi0 - whole;
  const double sign = frac < 0.0 ? -1.0 : 1.0;
  const double phi_ext_reduced = 2.0 * k_pi * std::abs(frac);
  const double root = branch_root(params, phi_ext_reduced);

  FluxOperatingPoint op;
  op.bias = bias;
  op.phi_min = sign * root + 2.0 * k_pi * whole;
  op.c2 = potential_derivative(params, root, phi_ext_reduced, 2);
  op.c3 = sign * potential_derivative(params, root, phi_ext_reduced, 3);
  op.c4 = potential_derivative(params, root, phi_ext_reduced, 4);
  if (!(op.c2 > 0.0)) {
    throw DegenerateMinimumError(
        "operating_point: stationary point has non-positive curvature "
        "(flat minimum at the alpha = 1/n boundary)");
  }
  op.l_s = params.l_j / op.c2;
  return op;
}

double bare_frequency(const SnailParams& params, const FluxBias& bias,
                      double c_shunt) {
  if (!(c_shunt > 0.0)) {
    throw ContractViolation("bare_frequency: c_shunt must be positive");
  }
  const FluxOperatingPoint op = operating_point(params, bias);
  return 1.0 / (2.0 * k_pi * std::sqrt(op.l_s * c_shunt));
}

TunableRange tunable_range(const SnailParams& params, double c_shunt,
                           const std::vector<FluxBias>& grid) {
  if (grid.empty()) {
    throw ContractViolation("tunable_range: flux grid is empty");
  }
  double lo = grid.front().phi_over_phi0;
  double hi = lo;
  for (const FluxBias& b : grid) {
    lo = std::min(lo, b.phi_over_phi0);
    hi = std::max(hi, b.phi_over_phi0);
  }
  if (hi - lo > 1.0 + 1e-12) {
    throw ContractViolation(
        "tunable_range: flux grid spans more than one flux period");
  }

  TunableRange range;
  range.f_min = std::numeric_limits<double>::infinity();
  range.f_max = -std::numeric_limits<double>::infinity();
  range.curve.reserve(grid.size());
  for (const FluxBias& b : grid) {
    const double f = bare_frequency(params, b, c_shunt);
    range.curve.emplace_back(b.phi_over_phi0, f);
    range.f_min = std::min(range.f_min, f);
    range.f_max = std::max(range.f_max, f);
  }
  return range;
}

FluxBias find_3wm_operating_point(const SnailParams& params,
                                  const std::vector<FluxBias>& grid) {
  if (grid.empty()) {
    throw ContractViolation("find_3wm_operating_point: flux grid is empty");
  }
  bool have_best = false;
  FluxBias best;
  double best_abs_c3 = 0.0;
  for (const FluxBias& b : grid) {
    const FluxOperatingPoint op = operating_point(params, b);
    if (!(op.c4 < 0.0)) {
      continue;  // Kerr-free or positive-Kerr point, unusable for 3WM
    }
    const double abs_c3 = std::abs(op.c3);
    bool better = false;
    if (!have_best) {
      better = true;
    } else if (abs_c3 != best_abs_c3) {
      better = abs_c3 > best_abs_c3;
    } else if (std::abs(b.phi_over_phi0) != std::abs(best.phi_over_phi0)) {
      better = std::abs(b.phi_over_phi0) < std::abs(best.phi_over_phi0);
    } else if ((b.phi_over_phi0 >= 0.0) != (best.phi_over_phi0 >= 0.0)) {
      better = b.phi_over_phi0 >= 0.0;
    }
    if (better) {
      best = b;
      best_abs_c3 = abs_c3;
      have_best = true;
    }
  }
  if (!have_best) {
    throw NotFoundError(
        "find_3wm_operating_point: no grid point with negative c4");
  }
  return best;
}

}  // namespace impa
