#include "impa/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace impa {

void PrototypeSpec::validate() const {
  if (order_n < 1) {
    throw ContractViolation("PrototypeSpec: order_n must be at least 1");
  }
  if (!(g_min_db > 0.0)) {
    throw ContractViolation("PrototypeSpec: g_min_db must be positive");
  }
  if (!(ripple_db > 0.0)) {
    throw ContractViolation("PrototypeSpec: ripple_db must be positive");
  }
  if (g.size() != static_cast<size_t>(order_n) + 1) {
    throw ContractViolation(
        "PrototypeSpec: g must hold order_n + 1 coefficients (g1..g_{N+1})");
  }
  for (double gi : g) {
    if (!(gi > 0.0)) {
      throw ContractViolation("PrototypeSpec: all g coefficients must be "
                              "positive");
    }
  }
}

double chebyshev_t(int n, double x) {
  if (n < 0) {
    throw ContractViolation("chebyshev_t: n must be non-negative");
  }
  if (n == 0) return 1.0;
  if (n == 1) return x;
  double t_prev = 1.0;
  double t_cur = x;
  for (int k = 2; k <= n; ++k) {
    const double t_next = 2.0 * x * t_cur - t_prev;
    t_prev = t_cur;
    t_cur = t_next;
  }
  return t_cur;
}

double power_loss(const RippleConstant& k, int order_n,
                  double omega_normalized) {
  const double t = chebyshev_t(order_n, omega_normalized);
  return 1.0 + k.k * k.k * t * t;
}

RippleConstant ripple_constant_from_spec(double g_min_db, double ripple_db) {
  if (!(g_min_db > 0.0)) {
    throw ContractViolation(
        "ripple_constant_from_spec: g_min_db must be positive");
  }
  if (!(ripple_db > 0.0)) {
    throw ContractViolation(
        "ripple_constant_from_spec: ripple_db must be positive");
  }
  // G = P_L/(P_L - 1) at |T_N| = 1 gives G_min = (1 + k^2)/k^2.
  const double g_min = std::pow(10.0, g_min_db / 10.0);
  return RippleConstant{std::sqrt(1.0 / (g_min - 1.0))};
}

const std::vector<PrototypeSpec>& builtin_prototype_table() {
  // Published negative-resistance amplifier prototype rows.
  static const std::vector<PrototypeSpec> table = {
      {2, 20.0, 0.5, {0.5, 0.24, 1.22}},
  };
  return table;
}

std::vector<PrototypeSpec> load_prototype_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("prototype table: cannot open " + path);
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError(path, std::string("prototype table: ") + e.what());
  }
  if (!doc.is_array()) {
    throw SchemaError(path, "prototype table: top-level value must be an "
                            "array of rows");
  }
  std::vector<PrototypeSpec> rows;
  rows.reserve(doc.size());
  for (size_t i = 0; i < doc.size(); ++i) {
    const nlohmann::json& row = doc[i];
    const std::string where = "rows[" + std::to_string(i) + "]";
    if (!row.is_object()) {
      throw SchemaError(where, "row must be an object");
    }
    for (const char* key : {"order", "g_min_db", "ripple_db", "g"}) {
      if (!row.contains(key)) {
        throw SchemaError(where + "." + key, "missing field");
      }
    }
    if (!row["order"].is_number_integer()) {
      throw SchemaError(where + ".order", "must be an integer");
    }
    if (!row["g_min_db"].is_number() || !row["ripple_db"].is_number()) {
      throw SchemaError(where, "g_min_db and ripple_db must be numbers");
    }
    if (!row["g"].is_array() || row["g"].empty()) {
      throw SchemaError(where + ".g", "must be a non-empty array");
    }
    PrototypeSpec spec;
    spec.order_n = row["order"].get<int>();
    spec.g_min_db = row["g_min_db"].get<double>();
    spec.ripple_db = row["ripple_db"].get<double>();
    for (size_t k = 0; k < row["g"].size(); ++k) {
      if (!row["g"][k].is_number()) {
        throw SchemaError(where + ".g[" + std::to_string(k) + "]",
                          "must be a number");
      }
      spec.g.push_back(row["g"][k].get<double>());
    }
    try {
      spec.validate();
    } catch (const ContractViolation& e) {
      throw SchemaError(where, e.what());
    }
    rows.push_back(std::move(spec));
  }
  return rows;
}

namespace {

std::string describe_row(const PrototypeSpec& row) {
  std::ostringstream out;
  out << "(N=" << row.order_n << ", " << row.g_min_db << " dB, "
      << row.ripple_db << " dB)";
  return out.str();
}

}  // namespace

PrototypeSpec prototype_lookup(int order_n, double g_min_db, double ripple_db,
                               const std::vector<PrototypeSpec>& extra) {
  constexpr double k_db_tol = 1e-9;
  std::vector<const PrototypeSpec*> all;
  for (const PrototypeSpec& row : extra) all.push_back(&row);
  for (const PrototypeSpec& row : builtin_prototype_table()) all.push_back(&row);

  for (const PrototypeSpec* row : all) {
    if (row->order_n == order_n &&
        std::abs(row->g_min_db - g_min_db) <= k_db_tol &&
        std::abs(row->ripple_db - ripple_db) <= k_db_tol) {
      PrototypeSpec found = *row;
      found.validate();
      return found;
    }
  }

  // Rank misses by distance in (order, gain, ripple) to suggest near rows.
  std::vector<const PrototypeSpec*> ranked = all;
  std::sort(ranked.begin(), ranked.end(),
            [&](const PrototypeSpec* a, const PrototypeSpec* b) {
              const double da = std::abs(a->order_n - order_n) * 1e6 +
                                std::abs(a->g_min_db - g_min_db) * 1e3 +
                                std::abs(a->ripple_db - ripple_db);
              const double db = std::abs(b->order_n - order_n) * 1e6 +
                                std::abs(b->g_min_db - g_min_db) * 1e3 +
                                std::abs(b->ripple_db - ripple_db);
              return da < db;
            });
  std::ostringstream msg;
  msg << "prototype_lookup: no table row for (N=" << order_n << ", "
      << g_min_db << " dB, " << ripple_db << " dB); nearest available:";
  const size_t shown = std::min<size_t>(3, ranked.size());
  for (size_t i = 0; i < shown; ++i) {
    msg << " " << describe_row(*ranked[i]);
  }
  if (ranked.empty()) {
    msg << " (none)";
  }
  throw TableMissError(msg.str());
}

}  // namespace impa
