#include "impa/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace impa {

namespace {

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    fields.push_back(field);
  }
  return fields;
}

double parse_value(const std::string& text, const std::string& path,
                   size_t line_no) {
  try {
    size_t consumed = 0;
    const double v = std::stod(text, &consumed);
    if (consumed != text.size()) {
      throw std::invalid_argument("trailing characters");
    }
    return v;
  } catch (const std::exception&) {
    throw SchemaError(path + ":" + std::to_string(line_no),
                      "not a number: \"" + text + "\"");
  }
}

}  // namespace

void write_response_csv(const std::string& path,
                        const FrequencyResponse& resp) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("csv: cannot write " + path);
  }
  out << "freq_hz,re_gamma,im_gamma,gain_db\n";
  for (size_t i = 0; i < resp.freqs.size(); ++i) {
    out << format_value(resp.freqs[i]) << ','
        << format_value(resp.gamma[i].real()) << ','
        << format_value(resp.gamma[i].imag()) << ','
        << format_value(resp.gain_db[i]) << '\n';
  }
}

FrequencyResponse read_response_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("csv: cannot open " + path);
  }
  std::string line;
  if (!std::getline(in, line) || line != "freq_hz,re_gamma,im_gamma,gain_db") {
    throw SchemaError(path, "expected header freq_hz,re_gamma,im_gamma,"
                            "gain_db");
  }
  FrequencyResponse resp;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != 4) {
      throw SchemaError(path + ":" + std::to_string(line_no),
                        "expected 4 columns");
    }
    resp.freqs.push_back(parse_value(fields[0], path, line_no));
    resp.gamma.emplace_back(parse_value(fields[1], path, line_no),
                            parse_value(fields[2], path, line_no));
    const double gain = parse_value(fields[3], path, line_no);
    resp.gain_db.push_back(gain);
    resp.pole.push_back(std::isinf(gain) && gain > 0.0);
  }
  for (size_t i = 1; i < resp.freqs.size(); ++i) {
    if (!(resp.freqs[i] > resp.freqs[i - 1])) {
      throw SchemaError(path, "frequency grid must be strictly increasing");
    }
  }
  return resp;
}

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("csv: cannot write " + path);
  }
  for (size_t i = 0; i < header.size(); ++i) {
    out << header[i] << (i + 1 < header.size() ? ',' : '\n');
  }
  for (const std::vector<double>& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out << format_value(row[i]) << (i + 1 < row.size() ? ',' : '\n');
    }
  }
}

CsvTable read_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("csv: cannot open " + path);
  }
  CsvTable table;
  std::string line;
  if (!std::getline(in, line) || line.empty()) {
    throw SchemaError(path, "missing CSV header");
  }
  table.header = split_line(line);
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_line(line);
    if (fields.size() != table.header.size()) {
      throw SchemaError(path + ":" + std::to_string(line_no),
                        "column count does not match header");
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) {
      row.push_back(parse_value(f, path, line_no));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace impa
