#include <doctest.h>

#include <cmath>
#include <sstream>

#include "riffle/commands.hpp"
#include "riffle/errors.hpp"
#include "riffle/report.hpp"

using namespace riffle;

namespace {

RunConfig base_config(const std::string& command, int n, const std::string& theta) {
  RunConfig cfg;
  cfg.command = command;
  cfg.n = n;
  cfg.theta_text = theta;
  return cfg;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

// value of `column` in the first CSV row matching all given pairs
std::string csv_lookup(const std::string& text, const std::string& column,
                       const std::vector<std::pair<std::string, std::string>>& match) {
  const auto lines = lines_of(text);
  size_t header_idx = 0;
  while (header_idx < lines.size() && lines[header_idx].rfind("#", 0) == 0) ++header_idx;
  REQUIRE(header_idx < lines.size());
  std::vector<std::string> cols;
  {
    std::istringstream h(lines[header_idx]);
    std::string c;
    while (std::getline(h, c, ',')) cols.push_back(c);
  }
  auto col_index = [&](const std::string& name) {
    for (size_t i = 0; i < cols.size(); ++i) {
      if (cols[i] == name) return i;
    }
    REQUIRE(false);
    return size_t{0};
  };
  const size_t want = col_index(column);
  for (size_t r = header_idx + 1; r < lines.size(); ++r) {
    std::vector<std::string> cells;
    std::istringstream row(lines[r]);
    std::string c;
    while (std::getline(row, c, ',')) cells.push_back(c);
    while (cells.size() < cols.size()) cells.push_back("");
    bool ok = true;
    for (const auto& [name, value] : match) {
      ok = ok && cells[col_index(name)] == value;
    }
    if (ok) return cells[want];
  }
  return "<no matching row>";
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.0, 1.0, 0.1, 0.3333333333333333, 1.7182818284590452, 1e-30}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("config header round-trips") {
  RunConfig cfg = base_config("distances", 6, "3/10");
  cfg.k_lo = 1;
  cfg.k_hi = 4;
  cfg.seed = 99;
  cfg.seed_set = true;
  std::ostringstream os;
  DistanceReport report;
  report.n = 6;
  report.theta = "3/10";
  report.config = cfg.header_pairs();
  report.write_csv(os);
  const auto lines = lines_of(os.str());
  REQUIRE(lines.size() >= 3);
  CHECK(lines[0].rfind("# riffle", 0) == 0);
  CHECK(lines[2] == "n,theta,k,method,value,stderr");
  CHECK(parse_config_line(lines[1]) == cfg.header_pairs());
}

TEST_CASE("distances command, exact backend") {
  RunConfig cfg = base_config("distances", 3, "1/2");
  cfg.backend = Backend::exact;
  cfg.k_lo = 1;
  cfg.k_hi = 3;
  std::ostringstream os;
  CHECK(cmd_distances(cfg, os) == 0);
  const std::string text = os.str();
  CHECK(csv_lookup(text, "value", {{"k", "1"}, {"method", "sep_partition"}}) == "1");
  CHECK(csv_lookup(text, "value", {{"k", "1"}, {"method", "linf_partition"}}) == "2");
  CHECK(csv_lookup(text, "value", {{"k", "1"}, {"method", "tv_enum"}}) == "1/3");
  CHECK(csv_lookup(text, "value", {{"k", "1"}, {"method", "sep_enum"}}) == "1");
}

TEST_CASE("distances command matches the 2-card closed form") {
  RunConfig cfg = base_config("distances", 2, "3/10");
  cfg.backend = Backend::exact;
  std::ostringstream os;
  cmd_distances(cfg, os);
  CHECK(csv_lookup(os.str(), "value", {{"k", "1"}, {"method", "sep_partition"}}) == "29/50");
  CHECK(csv_lookup(os.str(), "value", {{"k", "1"}, {"method", "linf_partition"}}) == "29/50");
}

TEST_CASE("distances command, float backend at full deck size") {
  RunConfig cfg = base_config("distances", 52, "0.5");
  cfg.k_lo = 1;
  cfg.k_hi = 30;
  std::ostringstream os;
  cmd_distances(cfg, os);
  const auto lines = lines_of(os.str());
  double prev = 2.0;
  int rows = 0;
  for (const auto& line : lines) {
    if (line.rfind("52,", 0) != 0) continue;
    std::istringstream row(line);
    std::string n_s, theta_s, k_s, method, value;
    std::getline(row, n_s, ',');
    std::getline(row, theta_s, ',');
    std::getline(row, k_s, ',');
    std::getline(row, method, ',');
    std::getline(row, value, ',');
    if (method != "sep_partition") continue;
    const double sep = std::stod(value);
    CHECK(sep <= prev + 1e-6);  // non-increasing up to float noise
    prev = sep;
    ++rows;
  }
  CHECK(rows == 30);
}

TEST_CASE("distances can attach an empirical separation column") {
  RunConfig cfg = base_config("distances", 6, "0.4");
  cfg.k_lo = 1;
  cfg.k_hi = 6;
  cfg.trials = 50'000;
  cfg.seed = 31;
  cfg.seed_set = true;
  std::ostringstream os;
  cmd_distances(cfg, os);
  const double emp = std::stod(csv_lookup(os.str(), "value", {{"k", "4"}, {"method", "sep_empirical"}}));
  const double exact = std::stod(csv_lookup(os.str(), "value", {{"k", "4"}, {"method", "sep_partition"}}));
  CHECK(std::abs(emp - exact) < 0.02);
  const std::string se = csv_lookup(os.str(), "stderr", {{"k", "4"}, {"method", "sep_empirical"}});
  CHECK(!se.empty());
  CHECK(std::stod(se) > 0.0);
  // Without trials the column is absent.
  RunConfig plain = base_config("distances", 6, "0.4");
  std::ostringstream os2;
  cmd_distances(plain, os2);
  CHECK(csv_lookup(os2.str(), "value", {{"k", "1"}, {"method", "sep_empirical"}}) ==
        "<no matching row>");
}

TEST_CASE("simulate requires a seed and an enumerable deck") {
  RunConfig cfg = base_config("simulate", 5, "0.3");
  cfg.trials = 10;
  std::ostringstream os;
  CHECK_THROWS_AS(cmd_simulate(cfg, os), usage_error);
  cfg.seed = 1;
  cfg.seed_set = true;
  cfg.n = 11;
  CHECK_THROWS_AS(cmd_simulate(cfg, os), capacity_error);
  cfg.n = 3;
  CHECK(cmd_simulate(cfg, os) == 0);  // tiny trial counts are allowed
}

TEST_CASE("simulate is deterministic given the seed") {
  RunConfig cfg = base_config("simulate", 4, "0.3");
  cfg.trials = 20'000;
  cfg.seed = 4242;
  cfg.seed_set = true;
  std::ostringstream a, b;
  cmd_simulate(cfg, a);
  cmd_simulate(cfg, b);
  CHECK(a.str() == b.str());
  cfg.format = OutputFormat::json;
  std::ostringstream j1, j2;
  cmd_simulate(cfg, j1);
  cmd_simulate(cfg, j2);
  CHECK(j1.str() == j2.str());
  CHECK(j1.str() != a.str());
}

TEST_CASE("sst command reports tails, gaps and censoring") {
  RunConfig cfg = base_config("sst", 2, "0.5");
  cfg.trials = 50'000;
  cfg.seed = 7;
  cfg.seed_set = true;
  cfg.k_max = 8;
  std::ostringstream os;
  CHECK(cmd_sst(cfg, os) == 0);
  const double t3 = std::stod(csv_lookup(os.str(), "tail_empirical", {{"k", "3"}}));
  CHECK(std::abs(t3 - 0.125) < 0.01);
  const double sep3 = std::stod(csv_lookup(os.str(), "sep_partition", {{"k", "3"}}));
  CHECK(sep3 == doctest::Approx(0.125).epsilon(1e-12));
  bool censored_reported = false;
  for (const auto& [key, value] : parse_config_line(lines_of(os.str())[1])) {
    censored_reported = censored_reported || key == "censored";
  }
  CHECK(censored_reported);
}

TEST_CASE("cutoff command") {
  RunConfig cfg = base_config("cutoff", 52, "1/2");
  cfg.backend = Backend::exact;
  cfg.c_lo = -2;
  cfg.c_hi = 4;
  cfg.c_step = 2;
  std::ostringstream os;
  CHECK(cmd_cutoff(cfg, os) == 0);
  CHECK(csv_lookup(os.str(), "k", {{"c", "0"}}) == "10");
  const double sep_limit0 = std::stod(csv_lookup(os.str(), "sep_limit", {{"c", "0"}}));
  CHECK(sep_limit0 == doctest::Approx(0.632120559).epsilon(1e-8));
  const double linf_limit0 = std::stod(csv_lookup(os.str(), "linf_limit", {{"c", "0"}}));
  CHECK(linf_limit0 == doctest::Approx(1.718281828).epsilon(1e-8));
  const double sep_limit4 = std::stod(csv_lookup(os.str(), "sep_limit", {{"c", "4"}}));
  CHECK(sep_limit4 == doctest::Approx(0.0181490).epsilon(1e-4));
  const double sep_limit_m2 = std::stod(csv_lookup(os.str(), "sep_limit", {{"c", "-2"}}));
  CHECK(sep_limit_m2 == doctest::Approx(0.9993819).epsilon(1e-6));
}

TEST_CASE("spectrum command checksum") {
  RunConfig cfg = base_config("spectrum", 3, "1/2");
  cfg.backend = Backend::exact;
  std::ostringstream os;
  CHECK(cmd_spectrum(cfg, os) == 0);
  const auto header = parse_config_line(lines_of(os.str())[1]);
  std::string checksum, nfact;
  for (const auto& [key, value] : header) {
    if (key == "multiplicity_checksum") checksum = value;
    if (key == "n_factorial") nfact = value;
  }
  CHECK(checksum == "6");
  CHECK(checksum == nfact);
  CHECK(lines_of(os.str()).size() == 3 + 3);  // two header lines, column row, three entries
}

TEST_CASE("asym command") {
  RunConfig cfg = base_config("asym", 52, "0.5");
  cfg.k_lo = cfg.k_hi = 15;
  std::ostringstream os;
  CHECK(cmd_asym(cfg, os) == 0);
  CHECK(std::stod(csv_lookup(os.str(), "M", {{"k", "15"}})) ==
        doctest::Approx(0.0826507).epsilon(1e-4));
  CHECK(csv_lookup(os.str(), "valid", {{"k", "15"}}) == "true");
  CHECK(std::stod(csv_lookup(os.str(), "validity_threshold", {{"k", "15"}})) ==
        doctest::Approx(0.18250).epsilon(1e-3));

  cfg.k_lo = cfg.k_hi = 1;
  std::ostringstream os2;
  CHECK_THROWS_AS(cmd_asym(cfg, os2), divergence_error);
}

TEST_CASE("unknown command is a usage error") {
  RunConfig cfg = base_config("frobnicate", 3, "0.5");
  std::ostringstream os;
  CHECK_THROWS_AS(run_command(cfg, os), usage_error);
}
