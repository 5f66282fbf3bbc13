#include "riffle/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "riffle/asymptotics.hpp"

namespace riffle {

namespace {

std::string backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

// One theta string for headers: canonical rational for the exact backend,
// shortest double otherwise.
std::string canonical_theta(const RunConfig& cfg) {
  if (cfg.backend == Backend::exact) return to_string(cfg.theta_rational());
  return format_double(cfg.theta_float());
}

void check_theta_open_interval(const RunConfig& cfg) {
  const double t = cfg.theta_float();
  if (!(t > 0.0 && t < 1.0)) {
    throw usage_error("theta must lie strictly inside (0,1); got " + cfg.theta_text);
  }
}

void require_seed(const RunConfig& cfg) {
  if (!cfg.seed_set) throw usage_error(cfg.command + ": --seed is required");
}

void require_trials(const RunConfig& cfg) {
  if (cfg.trials < 1) throw usage_error(cfg.command + ": --trials must be >= 1");
}

void emit(const RunConfig& cfg, const DistanceReport& report, std::ostream& os) {
  if (cfg.format == OutputFormat::csv) {
    report.write_csv(os);
  } else {
    report.write_json(os);
  }
}

void emit(const RunConfig& cfg, const Table& table, std::ostream& os) {
  if (cfg.format == OutputFormat::csv) {
    table.write_csv(os);
  } else {
    table.write_json(os);
  }
}

std::string lambda_string(const Partition& lambda) {
  std::string out;
  for (size_t i = 0; i < lambda.parts.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(lambda.parts[i]);
  }
  return out;
}

std::string word_string(const Permutation& w) {
  std::string out;
  for (size_t i = 0; i < w.word().size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(w.word()[i]);
  }
  return out;
}

}  // namespace

Rational RunConfig::theta_rational() const { return parse_rational(theta_text); }

double RunConfig::theta_float() const { return to_double(parse_rational(theta_text)); }

std::vector<std::pair<std::string, std::string>> RunConfig::header_pairs() const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", command);
  kv.emplace_back("version", kVersion);
  kv.emplace_back("n", std::to_string(n));
  kv.emplace_back("theta", theta_text);
  kv.emplace_back("k", std::to_string(k_lo) + ":" + std::to_string(k_hi));
  kv.emplace_back("c", format_double(c_lo) + ":" + format_double(c_hi) + ":" +
                           format_double(c_step));
  kv.emplace_back("trials", std::to_string(trials));
  kv.emplace_back("seed", seed_set ? std::to_string(seed) : "none");
  kv.emplace_back("backend", backend_name(backend));
  kv.emplace_back("format", format_name(format));
  kv.emplace_back("partition-cap", std::to_string(partition_cap));
  kv.emplace_back("enum-cap", std::to_string(enum_cap));
  kv.emplace_back("weight-cap", std::to_string(weight_cap));
  kv.emplace_back("k-max", std::to_string(k_max));
  return kv;
}

std::vector<std::pair<std::string, std::string>> parse_config_line(const std::string& line) {
  std::vector<std::pair<std::string, std::string>> kv;
  const std::string prefix = "# config:";
  if (line.rfind(prefix, 0) != 0) {
    throw std::invalid_argument("parse_config_line: not a config line");
  }
  std::istringstream iss(line.substr(prefix.size()));
  std::string token;
  while (iss >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) continue;
    kv.emplace_back(token.substr(0, eq), token.substr(eq + 1));
  }
  return kv;
}

int cmd_distances(const RunConfig& cfg, std::ostream& os) {
  check_theta_open_interval(cfg);
  if (cfg.k_lo > cfg.k_hi) throw usage_error("distances: empty k range");
  DistanceReport report;
  report.n = cfg.n;
  report.theta = canonical_theta(cfg);
  report.config = cfg.header_pairs();

  const bool enumerable = cfg.n <= cfg.enum_cap;
  std::optional<SstTail> empirical;
  if (cfg.trials > 0) {
    require_seed(cfg);
    empirical = sst_tail_mc(cfg.n, BiasVector<double>::two_pile(cfg.theta_float()),
                            std::max(cfg.k_hi, 1), cfg.trials, cfg.seed);
  }

  try {
    for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
      ReportRow row;
      row.k = k;
      if (enumerable) {
        if (cfg.backend == Backend::exact) {
          const auto theta = BiasVector<Rational>::two_pile(cfg.theta_rational());
          const auto ext =
              law_extremes(exact_law(cfg.n, convolve_power(theta, k, cfg.weight_cap), cfg.enum_cap));
          row.cells.push_back({"sep_enum", to_string(ext.sep), std::nullopt});
          row.cells.push_back({"linf_enum", to_string(ext.linf), std::nullopt});
          row.cells.push_back({"tv_enum", to_string(ext.tv), std::nullopt});
        } else {
          const auto theta = BiasVector<double>::two_pile(cfg.theta_float());
          const auto ext =
              law_extremes(exact_law(cfg.n, convolve_power(theta, k, cfg.weight_cap), cfg.enum_cap));
          row.cells.push_back({"sep_enum", format_double(ext.sep), std::nullopt});
          row.cells.push_back({"linf_enum", format_double(ext.linf), std::nullopt});
          row.cells.push_back({"tv_enum", format_double(ext.tv), std::nullopt});
        }
      }
      if (cfg.backend == Backend::exact) {
        const Rational theta = cfg.theta_rational();
        row.cells.push_back(
            {"sep_partition", to_string(sep_partition(cfg.n, theta, k, cfg.partition_cap)),
             std::nullopt});
        row.cells.push_back(
            {"linf_partition", to_string(linf_partition(cfg.n, theta, k, cfg.partition_cap)),
             std::nullopt});
        row.cells.push_back(
            {"birthday_bound", to_string(birthday_bound(cfg.n, theta, k)), std::nullopt});
      } else {
        const double theta = cfg.theta_float();
        row.cells.push_back(
            {"sep_partition", format_double(sep_partition(cfg.n, theta, k, cfg.partition_cap)),
             std::nullopt});
        row.cells.push_back(
            {"linf_partition", format_double(linf_partition(cfg.n, theta, k, cfg.partition_cap)),
             std::nullopt});
        row.cells.push_back(
            {"birthday_bound", format_double(birthday_bound(cfg.n, theta, k)), std::nullopt});
      }
      if (empirical && k <= empirical->k_max) {
        row.cells.push_back({"sep_empirical", format_double(empirical->tail[k]),
                             empirical->std_error[k]});
      }
      report.rows.push_back(std::move(row));
    }
  } catch (const capacity_error& e) {
    throw capacity_error(std::string(e.what()) +
                         " (lower --n or --k, or raise the relevant cap)");
  }
  emit(cfg, report, os);
  return 0;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  check_theta_open_interval(cfg);
  require_seed(cfg);
  require_trials(cfg);
  if (cfg.n > cfg.enum_cap) {
    throw capacity_error("simulate: n = " + std::to_string(cfg.n) +
                         " exceeds the enumeration cap " + std::to_string(cfg.enum_cap) +
                         " (empirical frequencies need the exact law; lower --n or raise "
                         "--enum-cap)");
  }
  const int k = cfg.k_lo;
  const auto theta = BiasVector<double>::two_pile(cfg.theta_float());
  const auto law = exact_law(cfg.n, convolve_power(theta, k, cfg.weight_cap), cfg.enum_cap);

  const std::uint64_t cells = factorial_u64(cfg.n);
  std::vector<long long> counts(cells, 0);
  constexpr int kChunks = 64;
  std::vector<std::vector<long long>> chunk_counts(kChunks, std::vector<long long>(cells, 0));
  const int workers = std::min(thread_count(), kChunks);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int c = w; c < kChunks; c += workers) {
        const long long begin = cfg.trials * c / kChunks;
        const long long end = cfg.trials * (c + 1) / kChunks;
        RngStream rng(cfg.seed, static_cast<std::uint64_t>(c));
        for (long long i = begin; i < end; ++i) {
          ++chunk_counts[c][lex_rank(forward_sample(cfg.n, theta, rng, k))];
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int c = 0; c < kChunks; ++c) {
    for (std::uint64_t r = 0; r < cells; ++r) counts[r] += chunk_counts[c][r];
  }

  double tv = 0.0;
  for (std::uint64_t r = 0; r < cells; ++r) {
    tv += std::abs(static_cast<double>(counts[r]) / cfg.trials - law.probs[r]);
  }
  tv /= 2.0;

  Table table;
  table.config = cfg.header_pairs();
  table.config.emplace_back("tv_empirical_vs_exact", format_double(tv));
  table.columns = {"rank", "word", "count", "frequency", "stderr", "exact_prob"};
  std::uint64_t rank = 0;
  for_each_permutation(
      cfg.n,
      [&](const Permutation& w) {
        const double freq = static_cast<double>(counts[rank]) / cfg.trials;
        const double se = std::sqrt(std::max(freq * (1.0 - freq), 0.0) / cfg.trials);
        table.rows.push_back({std::to_string(rank), word_string(w), std::to_string(counts[rank]),
                              format_double(freq), format_double(se),
                              format_double(law.probs[rank])});
        ++rank;
      },
      cfg.enum_cap);
  emit(cfg, table, os);
  return 0;
}

int cmd_sst(const RunConfig& cfg, std::ostream& os) {
  check_theta_open_interval(cfg);
  require_seed(cfg);
  require_trials(cfg);
  const auto tail = sst_tail_mc(cfg.n, BiasVector<double>::two_pile(cfg.theta_float()),
                                cfg.k_max, cfg.trials, cfg.seed);
  const bool have_exact = cfg.n <= cfg.partition_cap;
  Table table;
  table.config = cfg.header_pairs();
  table.config.emplace_back("censored", std::to_string(tail.censored));
  table.columns = {"k", "tail_empirical", "stderr", "sep_partition", "abs_gap"};
  for (int k = 1; k <= cfg.k_max; ++k) {
    std::vector<std::string> row{std::to_string(k), format_double(tail.tail[k]),
                                 format_double(tail.std_error[k]), "", ""};
    if (have_exact) {
      const double sep = sep_partition(cfg.n, cfg.theta_float(), k, cfg.partition_cap);
      row[3] = format_double(sep);
      row[4] = format_double(std::abs(tail.tail[k] - sep));
    }
    table.rows.push_back(std::move(row));
  }
  emit(cfg, table, os);
  return 0;
}

int cmd_cutoff(const RunConfig& cfg, std::ostream& os) {
  check_theta_open_interval(cfg);
  if (cfg.c_step <= 0.0 || cfg.c_hi < cfg.c_lo) throw usage_error("cutoff: empty c range");
  Table table;
  table.config = cfg.header_pairs();
  table.columns = {"c",         "k",          "sep_exact", "sep_limit", "sep_gap",
                   "linf_exact", "linf_limit", "linf_gap"};
  for (double c = cfg.c_lo; c <= cfg.c_hi + 1e-12; c += cfg.c_step) {
    const int k = cutoff_k(cfg.n, cfg.theta_float(), c);
    const RegimeLimits lim = regime_prediction(Regime::fixed, {.c = c, .kappa = 0.0});
    double sep, linf;
    if (cfg.backend == Backend::exact) {
      const Rational theta = cfg.theta_rational();
      sep = to_double(sep_partition(cfg.n, theta, k, cfg.partition_cap));
      linf = to_double(linf_partition(cfg.n, theta, k, cfg.partition_cap));
    } else {
      sep = sep_partition(cfg.n, cfg.theta_float(), k, cfg.partition_cap);
      linf = linf_partition(cfg.n, cfg.theta_float(), k, cfg.partition_cap);
    }
    table.rows.push_back({format_double(c), std::to_string(k), format_double(sep),
                          format_double(*lim.sep), format_double(std::abs(sep - *lim.sep)),
                          format_double(linf), format_double(*lim.linf),
                          format_double(std::abs(linf - *lim.linf))});
  }
  emit(cfg, table, os);
  return 0;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& os) {
  check_theta_open_interval(cfg);
  Table table;
  table.config = cfg.header_pairs();
  table.columns = {"lambda", "eigenvalue", "multiplicity"};
  Int checksum = 0;
  if (cfg.backend == Backend::exact) {
    for (const auto& entry : spectrum(cfg.n, cfg.theta_rational(), cfg.partition_cap)) {
      checksum += entry.multiplicity;
      table.rows.push_back(
          {lambda_string(entry.lambda), to_string(entry.eigenvalue), entry.multiplicity.str()});
    }
  } else {
    for (const auto& entry : spectrum(cfg.n, cfg.theta_float(), cfg.partition_cap)) {
      checksum += entry.multiplicity;
      table.rows.push_back({lambda_string(entry.lambda), format_double(entry.eigenvalue),
                            entry.multiplicity.str()});
    }
  }
  table.config.emplace_back("multiplicity_checksum", checksum.str());
  table.config.emplace_back("n_factorial", factorial(cfg.n).str());
  emit(cfg, table, os);
  return 0;
}

int cmd_asym(const RunConfig& cfg, std::ostream& os) {
  check_theta_open_interval(cfg);
  if (cfg.k_lo > cfg.k_hi) throw usage_error("asym: empty k range");
  const bool have_exact = cfg.n <= cfg.partition_cap;
  Table table;
  table.config = cfg.header_pairs();
  table.columns = {"k",     "M",         "valid", "validity_threshold", "ell_approx",
                   "ell_exact", "rel_error", "error_budget"};
  for (int k = cfg.k_lo; k <= cfg.k_hi; ++k) {
    const AsymptoticEstimate est = ell_approx(cfg.n, cfg.theta_float(), k);
    std::vector<std::string> row{std::to_string(k),
                                 format_double(est.big_m),
                                 est.valid ? "true" : "false",
                                 format_double(est.validity_threshold),
                                 format_double(est.ell),
                                 "",
                                 "",
                                 ""};
    if (have_exact) {
      const double exact =
          ell_from_linf(linf_partition(cfg.n, cfg.theta_float(), k, cfg.partition_cap));
      row[5] = format_double(exact);
      row[6] = format_double(std::abs(exact / est.ell - 1.0));
      row[7] = format_double(10.0 * (1.0 + est.big_m) / std::sqrt(cfg.n));
    }
    table.rows.push_back(std::move(row));
  }
  emit(cfg, table, os);
  return 0;
}

int run_command(const RunConfig& cfg, std::ostream& fallback) {
  std::ofstream file;
  std::ostream* os = &fallback;
  if (!cfg.out.empty()) {
    file.open(cfg.out, std::ios::binary);
    if (!file) throw usage_error("cannot open output file: " + cfg.out);
    os = &file;
  }
  if (cfg.command == "distances") return cmd_distances(cfg, *os);
  if (cfg.command == "simulate") return cmd_simulate(cfg, *os);
  if (cfg.command == "sst") return cmd_sst(cfg, *os);
  if (cfg.command == "cutoff") return cmd_cutoff(cfg, *os);
  if (cfg.command == "spectrum") return cmd_spectrum(cfg, *os);
  if (cfg.command == "asym") return cmd_asym(cfg, *os);
  throw usage_error("unknown command: " + cfg.command);
}

}  // namespace riffle
