// Minimal RFC-4180-style CSV: comma separated, '\n' line ends, fields with
// commas, quotes or line breaks are quoted with doubled inner quotes.
#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sfv {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(std::string_view text);

/// Throws std::runtime_error when the destination cannot be written.
void write_csv(const CsvTable& table, const std::filesystem::path& destination);
CsvTable read_csv(const std::filesystem::path& source);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);

}  // namespace sfv
