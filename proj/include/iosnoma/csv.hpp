#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace iosnoma {

// 12 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

struct CsvMeta {
  std::string command;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::string convention;
  std::string a1_variant;
  std::string objective;
  std::uint64_t digest = 0;
  std::string config_json;  // canonical, single line
};

using CsvCell = std::variant<double, std::int64_t, std::string>;

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<CsvCell> row);
  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t size() const { return rows_.size(); }

  // Comment header block, column line, rows.
  std::string render(const CsvMeta& meta) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvCell>> rows_;
};

std::string tool_version();

// Writes atomically enough for our purposes; throws IoError.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace iosnoma
