#include "impa/netlist.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace impa {

void Netlist::validate() const {
  if (elements.empty()) {
    throw ContractViolation("Netlist: element list is empty");
  }
  if (!std::holds_alternative<PortTermination>(elements.front())) {
    throw ContractViolation("Netlist: first element must be the port "
                            "termination");
  }
  size_t negative_shunts = 0;
  size_t last_series = 0;
  size_t last_negative = 0;
  for (size_t i = 0; i < elements.size(); ++i) {
    const NetlistElement& e = elements[i];
    if (const auto* port = std::get_if<PortTermination>(&e)) {
      if (i != 0) {
        throw ContractViolation("Netlist: port termination allowed only in "
                                "first position");
      }
      if (!(port->z0 > 0.0)) {
        throw ContractViolation("Netlist: port impedance must be positive");
      }
    } else if (const auto* sc = std::get_if<SeriesCapacitor>(&e)) {
      if (!(sc->c > 0.0)) {
        throw ContractViolation("Netlist: series capacitance must be "
                                "positive");
      }
      last_series = i;
    } else if (const auto* lc = std::get_if<ShuntParallelLc>(&e)) {
      if (!(lc->l > 0.0) || !(lc->c > 0.0)) {
        throw ContractViolation("Netlist: shunt resonator L and C must be "
                                "positive");
      }
    } else if (const auto* r = std::get_if<ShuntResistor>(&e)) {
      if (r->r == 0.0) {
        throw ContractViolation("Netlist: shunt resistance must be nonzero");
      }
      if (r->r < 0.0) {
        ++negative_shunts;
        last_negative = i;
      }
    }
  }
  if (negative_shunts > 1) {
    throw ContractViolation("Netlist: more than one negative shunt resistor");
  }
  if (negative_shunts == 1 && last_series > last_negative) {
    throw ContractViolation("Netlist: negative shunt resistor must sit at "
                            "the final (JPA) node");
  }
}

double Netlist::port_impedance() const {
  validate();
  return std::get<PortTermination>(elements.front()).z0;
}

namespace {

size_t unique_resistor_index(const Netlist& netlist) {
  size_t index = netlist.elements.size();
  size_t count = 0;
  for (size_t i = 0; i < netlist.elements.size(); ++i) {
    if (std::holds_alternative<ShuntResistor>(netlist.elements[i])) {
      index = i;
      ++count;
    }
  }
  if (count != 1) {
    throw ContractViolation(
        "Netlist: expected exactly one shunt resistor, found " +
        std::to_string(count));
  }
  return index;
}

}  // namespace

void set_jpa_resistance(Netlist& netlist, double r) {
  const size_t i = unique_resistor_index(netlist);
  std::get<ShuntResistor>(netlist.elements[i]).r = r;
}

double jpa_resistance(const Netlist& netlist) {
  const size_t i = unique_resistor_index(netlist);
  return std::get<ShuntResistor>(netlist.elements[i]).r;
}

namespace {

double require_field(const nlohmann::json& obj, const std::string& where,
                     const char* key) {
  if (!obj.contains(key)) {
    throw SchemaError(where + "." + key, "missing field");
  }
  if (!obj[key].is_number()) {
    throw SchemaError(where + "." + key, "must be a number");
  }
  return obj[key].get<double>();
}

}  // namespace

std::string netlist_to_json(const Netlist& netlist) {
  nlohmann::json doc;
  doc["schema"] = "netlist-v1";
  doc["elements"] = nlohmann::json::array();
  for (const NetlistElement& e : netlist.elements) {
    nlohmann::json entry;
    if (const auto* port = std::get_if<PortTermination>(&e)) {
      entry["kind"] = "port_termination";
      entry["z0_ohms"] = port->z0;
    } else if (const auto* sc = std::get_if<SeriesCapacitor>(&e)) {
      entry["kind"] = "series_capacitor";
      entry["c_farads"] = sc->c;
    } else if (const auto* lc = std::get_if<ShuntParallelLc>(&e)) {
      entry["kind"] = "shunt_parallel_lc";
      entry["l_henries"] = lc->l;
      entry["c_farads"] = lc->c;
    } else if (const auto* r = std::get_if<ShuntResistor>(&e)) {
      entry["kind"] = "shunt_resistor";
      entry["r_ohms"] = r->r;
    }
    doc["elements"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

Netlist netlist_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("netlist: ") + e.what());
  }
  if (!doc.is_object()) {
    throw SchemaError("", "netlist: top-level value must be an object");
  }
  if (!doc.contains("schema") || !doc["schema"].is_string() ||
      doc["schema"].get<std::string>() != "netlist-v1") {
    throw SchemaError("schema", "expected \"netlist-v1\"");
  }
  if (!doc.contains("elements") || !doc["elements"].is_array()) {
    throw SchemaError("elements", "must be an array");
  }
  Netlist netlist;
  const nlohmann::json& elems = doc["elements"];
  for (size_t i = 0; i < elems.size(); ++i) {
    const nlohmann::json& entry = elems[i];
    const std::string where = "elements[" + std::to_string(i) + "]";
    if (!entry.is_object() || !entry.contains("kind") ||
        !entry["kind"].is_string()) {
      throw SchemaError(where + ".kind", "missing or non-string kind");
    }
    const std::string kind = entry["kind"].get<std::string>();
    if (kind == "port_termination") {
      netlist.elements.push_back(
          PortTermination{require_field(entry, where, "z0_ohms")});
    } else if (kind == "series_capacitor") {
      netlist.elements.push_back(
          SeriesCapacitor{require_field(entry, where, "c_farads")});
    } else if (kind == "shunt_parallel_lc") {
      netlist.elements.push_back(
          ShuntParallelLc{require_field(entry, where, "l_henries"),
                          require_field(entry, where, "c_farads")});
    } else if (kind == "shunt_resistor") {
      netlist.elements.push_back(
          ShuntResistor{require_field(entry, where, "r_ohms")});
    } else {
      throw SchemaError(where + ".kind", "unknown element kind \"" + kind +
                                             "\"");
    }
  }
  try {
    netlist.validate();
  } catch (const ContractViolation& e) {
    throw SchemaError("elements", e.what());
  }
  return netlist;
}

void write_netlist_file(const std::string& path, const Netlist& netlist) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("netlist: cannot write " + path);
  }
  out << netlist_to_json(netlist);
}

Netlist read_netlist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("netlist: cannot open " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return netlist_from_json(text);
}

}  // namespace impa
