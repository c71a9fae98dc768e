#pragma once

#include <string>
#include <vector>

#include "impa/ac.hpp"

namespace impa {

// CSV conventions shared by every writer here: comma separator, '.' decimal
// point, no thousands separators, '\n' line endings, one header line,
// values printed with 17 significant digits so parsing reproduces the exact
// doubles.

void write_response_csv(const std::string& path,
                        const FrequencyResponse& resp);

// Reads a file written by write_response_csv (header
// "freq_hz,re_gamma,im_gamma,gain_db"); pole points round-trip as +inf.
FrequencyResponse read_response_csv(const std::string& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

void write_table_csv(const std::string& path,
                     const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows);

CsvTable read_table_csv(const std::string& path);

}  // namespace impa
