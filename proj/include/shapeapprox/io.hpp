#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace shapeapprox {

using Cell = std::variant<long long, double, std::string>;

/// Column-named rows; doubles render with 17 significant digits.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
  std::size_t column(std::string_view name) const;
  double number(std::size_t row, std::string_view name) const;
  std::vector<double> numbers(std::string_view name) const;
};

std::string format_cell(const Cell& c);

/// SHA-1 of "blob <len>\0" + content, hex encoded (what `git hash-object` prints).
std::string git_blob_sha1(std::string_view content);

/// Hash over the canonical config dump followed by the bytes of every input
/// file, in order.
std::string input_hash(const nlohmann::json& config, const std::vector<std::string>& input_files = {});

std::string read_file(const std::string& path);

/// Metadata lines ("# key: value") for config and hash, then the header row
/// and one line per table row.
void write_csv(std::ostream& os, const Table& t, const nlohmann::json& config, const std::string& hash);

nlohmann::json table_to_json(const Table& t);

}  // namespace shapeapprox
