#pragma once

// Report emission: CSV with round-trip (%.17g) number formatting and JSON
// summaries. Output depends only on the data, so reruns are byte-identical.

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace axiskit {

using Json = nlohmann::ordered_json;
using CsvCell = std::variant<double, long long, std::string, bool>;

std::string format_number(double x);

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  void row(const std::vector<CsvCell>& cells);
  std::size_t columns() const { return columns_; }

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::filesystem::path path_;
};

/// Pretty-printed JSON with a trailing newline. Non-finite numbers are
/// written as strings ("inf", "nan").
void write_json(const std::filesystem::path& path, const Json& j);

/// Finite doubles as numbers, others as strings.
Json json_number(double x);

}  // namespace axiskit
