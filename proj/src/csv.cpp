#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "chtw/dsl.hpp"
#include "chtw/error.hpp"

namespace chtw::dsl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Non-empty lines of the file, each split on commas.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read CSV file '" + path.string() + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest = line;
    for (;;) {
      const auto comma = rest.find(',');
      const std::string_view cell = trim(rest.substr(0, comma));
      double value = 0.0;
      std::string_view digits = cell;
      if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
      auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (cell.empty() || ec != std::errc() || end != digits.data() + digits.size() || !std::isfinite(value)) {
        throw Error(ErrorCode::ParseError, path.string() + ":" + std::to_string(line_number) + ": '" +
                                               std::string(cell) + "' is not a number");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Field load_field_csv(const std::filesystem::path& path, const Grid& grid) {
  Field values;
  for (auto& row : read_rows(path)) values.insert(values.end(), row.begin(), row.end());
  if (values.size() != grid.total_cells()) {
    throw Error(ErrorCode::LengthMismatch, path.string() + " has " + std::to_string(values.size()) +
                                               " values, grid '" + grid.space().id + "' has " +
                                               std::to_string(grid.total_cells()) + " cells");
  }
  return values;
}

Field load_kernel_csv(const std::filesystem::path& path, const Grid& source, const Grid& target) {
  const auto rows = read_rows(path);
  if (rows.size() != source.total_cells()) {
    throw Error(ErrorCode::LengthMismatch, path.string() + " has " + std::to_string(rows.size()) +
                                               " rows, source grid has " + std::to_string(source.total_cells()) +
                                               " cells");
  }
  Field values;
  values.reserve(source.total_cells() * target.total_cells());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != target.total_cells()) {
      throw Error(ErrorCode::LengthMismatch, path.string() + " row " + std::to_string(r + 1) + " has " +
                                                 std::to_string(rows[r].size()) + " columns, target grid has " +
                                                 std::to_string(target.total_cells()) + " cells");
    }
    values.insert(values.end(), rows[r].begin(), rows[r].end());
  }
  return values;
}

}  // namespace chtw::dsl
