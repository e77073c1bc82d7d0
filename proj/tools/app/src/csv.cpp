#include "eitcv_app/csv.hpp"

#include "eitcv/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace eitcv::app {

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_meta(std::string key, std::string value) {
  std::replace(value.begin(), value.end(), '\n', ' ');
  meta_.emplace_back(std::move(key), std::move(value));
}

void CsvTable::add_row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) {
    throw std::logic_error("CSV row has the wrong number of columns");
  }
  rows_.push_back(values);
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& [key, value] : meta_) {
    out += fmt::format("# {}={}\n", key, value);
  }
  out += fmt::format("{}\n", fmt::join(columns_, ","));
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ValidationError("cannot open output file " + path.string());
  file.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!file.flush()) throw ValidationError("cannot write output file " + path.string());
}

}  // namespace eitcv::app
