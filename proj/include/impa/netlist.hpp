#pragma once

#include <string>
#include <variant>
#include <vector>

#include "impa/errors.hpp"

namespace impa {

// One-port reflection ladder, listed from the measurement port inward.
// Series elements advance to a new node; shunt elements tie the current
// node to ground. The chain beyond the last element is open.

struct PortTermination {
  double z0 = 0.0;  // ohms
};

struct SeriesCapacitor {
  double c = 0.0;  // farads
};

struct ShuntParallelLc {
  double l = 0.0;  // henries
  double c = 0.0;  // farads
};

struct ShuntResistor {
  double r = 0.0;  // ohms; negative models the pumped JPA
};

using NetlistElement =
    std::variant<PortTermination, SeriesCapacitor, ShuntParallelLc,
                 ShuntResistor>;

struct Netlist {
  std::vector<NetlistElement> elements;

  // Structural checks: exactly one PortTermination in first position with
  // z0 > 0; reactances strictly positive; at most one negative ShuntResistor
  // and only at the final node (no series element after it).
  void validate() const;  // throws ContractViolation

  double port_impedance() const;
};

// Replaces the value of the unique ShuntResistor (the JPA element). Throws
// when the netlist has zero or several resistors.
void set_jpa_resistance(Netlist& netlist, double r);

// Value of the unique ShuntResistor.
double jpa_resistance(const Netlist& netlist);

// JSON round trip, schema "netlist-v1": {"schema": "netlist-v1",
// "elements": [{"kind": ..., <SI-unit fields>}, ...]}. Kinds and fields:
//   port_termination  {z0_ohms}
//   series_capacitor  {c_farads}
//   shunt_parallel_lc {l_henries, c_farads}
//   shunt_resistor    {r_ohms}
std::string netlist_to_json(const Netlist& netlist);
Netlist netlist_from_json(const std::string& text);

void write_netlist_file(const std::string& path, const Netlist& netlist);
Netlist read_netlist_file(const std::string& path);

}  // namespace impa
