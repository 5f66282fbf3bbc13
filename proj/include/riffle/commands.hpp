#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "riffle/distances.hpp"
#include "riffle/measure.hpp"
#include "riffle/rational.hpp"
#include "riffle/report.hpp"

namespace riffle {

enum class Backend { exact, floating };

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string command;
  int n = 0;
  std::string theta_text = "1/2";
  int k_lo = 1;
  int k_hi = 1;
  double c_lo = 0.0;
  double c_hi = 0.0;
  double c_step = 1.0;
  long long trials = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  Backend backend = Backend::floating;
  OutputFormat format = OutputFormat::csv;
  std::string out;  // empty -> stdout
  int partition_cap = kDefaultPartitionCap;
  int enum_cap = kDefaultEnumCap;
  std::size_t weight_cap = kDefaultWeightCap;
  int k_max = kDefaultSstCap;

  Rational theta_rational() const;  // exact value of theta_text
  double theta_float() const;
  // Canonical ordered key=value pairs embedded in every output file.
  std::vector<std::pair<std::string, std::string>> header_pairs() const;
};

// Rebuilds the key=value pairs from a written header line ("# config: ...").
std::vector<std::pair<std::string, std::string>> parse_config_line(const std::string& line);

int cmd_distances(const RunConfig& cfg, std::ostream& os);
int cmd_simulate(const RunConfig& cfg, std::ostream& os);
int cmd_sst(const RunConfig& cfg, std::ostream& os);
int cmd_cutoff(const RunConfig& cfg, std::ostream& os);
int cmd_spectrum(const RunConfig& cfg, std::ostream& os);
int cmd_asym(const RunConfig& cfg, std::ostream& os);

// Dispatches on cfg.command, writing to cfg.out (or `fallback` when no
// path was given). Returns the process exit code.
int run_command(const RunConfig& cfg, std::ostream& fallback);

}  // namespace riffle
