#include "iosnoma/csv.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "iosnoma/errors.hpp"

namespace iosnoma {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string tool_version() { return IOSNOMA_VERSION; }

void CsvTable::add_row(std::vector<CsvCell> row) {
  if (row.size() != columns_.size()) throw DimensionMismatch("csv: row width differs from the column count");
  rows_.push_back(std::move(row));
}

std::string CsvTable::render(const CsvMeta& meta) const {
  std::string out;
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016" PRIx64, meta.digest);
  out += "# tool: iosnoma " + tool_version() + "\n";
  out += "# command: " + meta.command + "\n";
  out += "# seed: " + std::to_string(meta.seed) + "\n";
  out += "# trials: " + std::to_string(meta.trials) + "\n";
  out += "# convention: " + meta.convention + "\n";
  out += "# a1_variant: " + meta.a1_variant + "\n";
  out += "# objective: " + meta.objective + "\n";
  out += "# scenario_digest: fnv1a64:" + std::string(digest) + "\n";
  out += "# config: " + meta.config_json + "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + columns_[i];
  out += "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              out += format_number(v);
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
              out += std::to_string(v);
            } else {
              out += v;
            }
          },
          row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to " + path + " failed");
}

}  // namespace iosnoma
