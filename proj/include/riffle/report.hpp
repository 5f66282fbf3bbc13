#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace riffle {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

// Shortest round-tripping decimal representation.
std::string format_double(double v);

// One computed metric value.
struct ReportCell {
  std::string method;              // e.g. "sep_partition", "tv_enum"
  std::string value;               // exact "p/q" or shortest double
  std::optional<double> std_error;  // empirical cells only
};

struct ReportRow {
  int k = 0;
  std::vector<ReportCell> cells;
};

// Long-format table of distance values: one record per (k, method).
// Serialized as CSV with columns n,theta,k,method,value,stderr and as a
// JSON object mirroring the same rows. The full run configuration is
// embedded so any output file identifies the command that produced it.
struct DistanceReport {
  int n = 0;
  std::string theta;
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, std::string>> config;  // ordered key=value

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

// Generic wide table used by the other commands (cutoff, spectrum, asym,
// simulate, sst): fixed column names, string cells, same embedded header.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> config;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

}  // namespace riffle
