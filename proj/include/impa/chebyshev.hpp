#pragma once

#include <string>
#include <vector>

#include "impa/errors.hpp"

namespace impa {

// Low-pass prototype row for an equal-ripple negative-resistance amplifier:
// order N, minimum passband gain, gain ripple, and coefficients g1..g(N+1).
// g0 (the source) is 1 by convention and not stored.
struct PrototypeSpec {
  int order_n = 0;
  double g_min_db = 0.0;
  double ripple_db = 0.0;
  std::vector<double> g;

  void validate() const;  // throws ContractViolation
};

// Ripple constant of the equal-ripple gain template P_L = 1 + k^2 T_N^2.
struct RippleConstant {
  double k = 0.0;
};

// Chebyshev polynomial of the first kind, T_n(x), by the three-term
// recurrence. n >= 0.
double chebyshev_t(int n, double x);

// P_L(omega) = 1 + k^2 * T_n(omega)^2 with omega the normalized frequency.
// Always >= 1; equals 1 exactly at Chebyshev zeros.
double power_loss(const RippleConstant& k, int order_n,
                  double omega_normalized);

// Ripple constant such that the reflection gain G = P_L / (P_L - 1),
// evaluated where T_N^2 = 1, equals the requested floor: k^2 = 1/(G_min - 1)
// with G_min linear. Both arguments must be positive dB values.
RippleConstant ripple_constant_from_spec(double g_min_db, double ripple_db);

// Built-in prototype rows (published equal-ripple amplifier tables).
const std::vector<PrototypeSpec>& builtin_prototype_table();

// Parses a user prototype table: a JSON array of rows
// {"order": N, "g_min_db": ..., "ripple_db": ..., "g": [...]}.
std::vector<PrototypeSpec> load_prototype_table(const std::string& path);

// Finds the row matching (order_n, g_min_db, ripple_db); gain and ripple
// match to 1e-9 dB. Rows in `extra` take precedence over the built-in table.
// Throws TableMissError naming the nearest available entries.
PrototypeSpec prototype_lookup(int order_n, double g_min_db, double ripple_db,
                               const std::vector<PrototypeSpec>& extra = {});

}  // namespace impa
