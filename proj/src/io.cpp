#include "shapeapprox/io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "shapeapprox/scalar.hpp"

namespace shapeapprox {

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw DomainError("table row has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) {
      return i;
    }
  }
  throw DomainError("no column '" + std::string(name) + "'");
}

double Table::number(std::size_t row, std::string_view name) const {
  const auto& c = rows.at(row).at(column(name));
  if (const auto* d = std::get_if<double>(&c)) {
    return *d;
  }
  if (const auto* i = std::get_if<long long>(&c)) {
    return static_cast<double>(*i);
  }
  throw DomainError("column '" + std::string(name) + "' is not numeric");
}

std::vector<double> Table::numbers(std::string_view name) const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.push_back(number(r, name));
  }
  return out;
}

std::string format_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", *d);
    return buf;
  }
  if (const auto* i = std::get_if<long long>(&c)) {
    return std::to_string(*i);
  }
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string git_blob_sha1(std::string_view content) {
  std::string data = "blob " + std::to_string(content.size());
  data.push_back('\0');
  data.append(content);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha1(), nullptr) != 1) {
    throw std::runtime_error("SHA-1 digest failed");
  }
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DomainError("cannot read '" + path + "'");
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string input_hash(const nlohmann::json& config, const std::vector<std::string>& input_files) {
  std::string blob = config.dump();
  for (const auto& f : input_files) {
    blob += read_file(f);
  }
  return git_blob_sha1(blob);
}

void write_csv(std::ostream& os, const Table& t, const nlohmann::json& config, const std::string& hash) {
  os << "# config: " << config.dump() << "\n";
  os << "# input_sha1: " << hash << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << format_cell(row[i]);
    }
    os << "\n";
  }
}

nlohmann::json table_to_json(const Table& t) {
  nlohmann::json j;
  j["columns"] = t.columns;
  auto rows = nlohmann::json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::json::array();
    for (const auto& c : row) {
      std::visit([&r](const auto& v) { r.push_back(v); }, c);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  return j;
}

}  // namespace shapeapprox
