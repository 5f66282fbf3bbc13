#include "riffle/report.hpp"

#include <charconv>

#include <json.hpp>

namespace riffle {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

void write_header(std::ostream& os,
                  const std::vector<std::pair<std::string, std::string>>& config) {
  os << "# riffle " << kVersion << " schema " << kSchemaVersion << "\n";
  os << "# config:";
  for (const auto& [key, value] : config) os << ' ' << key << '=' << value;
  os << "\n";
}

ordered_json config_json(const std::vector<std::pair<std::string, std::string>>& config) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : config) j[key] = value;
  return j;
}

}  // namespace

void DistanceReport::write_csv(std::ostream& os) const {
  write_header(os, config);
  os << "n,theta,k,method,value,stderr\n";
  for (const auto& row : rows) {
    for (const auto& cell : row.cells) {
      os << n << ',' << theta << ',' << row.k << ',' << cell.method << ',' << cell.value << ',';
      if (cell.std_error) os << format_double(*cell.std_error);
      os << '\n';
    }
  }
}

void DistanceReport::write_json(std::ostream& os) const {
  ordered_json j;
  j["version"] = kVersion;
  j["schema"] = kSchemaVersion;
  j["config"] = config_json(config);
  ordered_json rows_json = ordered_json::array();
  for (const auto& row : rows) {
    for (const auto& cell : row.cells) {
      ordered_json r;
      r["n"] = n;
      r["theta"] = theta;
      r["k"] = row.k;
      r["method"] = cell.method;
      r["value"] = cell.value;
      if (cell.std_error) r["stderr"] = *cell.std_error;
      rows_json.push_back(std::move(r));
    }
  }
  j["rows"] = std::move(rows_json);
  os << j.dump(2) << "\n";
}

void Table::write_csv(std::ostream& os) const {
  write_header(os, config);
  for (size_t i = 0; i < columns.size(); ++i) {
    os << columns[i] << (i + 1 < columns.size() ? ',' : '\n');
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      os << row[i] << (i + 1 < row.size() ? ',' : '\n');
    }
  }
}

void Table::write_json(std::ostream& os) const {
  ordered_json j;
  j["version"] = kVersion;
  j["schema"] = kSchemaVersion;
  j["config"] = config_json(config);
  ordered_json rows_json = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json r = ordered_json::object();
    for (size_t i = 0; i < columns.size() && i < row.size(); ++i) r[columns[i]] = row[i];
    rows_json.push_back(std::move(r));
  }
  j["rows"] = std::move(rows_json);
  os << j.dump(2) << "\n";
}

}  // namespace riffle
