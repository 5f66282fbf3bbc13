// Command-line front end: distance curves, simulations, spectra, cutoff
// tables, and the built-in verification suite. Every stochastic command
// requires --seed and reproduces its output byte for byte.

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "riffle/acceptance.hpp"
#include "riffle/commands.hpp"
#include "riffle/errors.hpp"
#include "riffle/report.hpp"

namespace {

// "lo:hi" -> [lo, hi]
void parse_int_range(const std::string& text, int* lo, int* hi) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      *lo = *hi = std::stoi(text);
    } else {
      *lo = std::stoi(text.substr(0, colon));
      *hi = std::stoi(text.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw riffle::usage_error("malformed range: " + text + " (expected lo:hi)");
  }
  if (*hi < *lo) throw riffle::usage_error("empty range: " + text);
}

// "lo:hi[:step]" over doubles
void parse_c_range(const std::string& text, double* lo, double* hi, double* step) {
  std::vector<std::string> parts;
  size_t begin = 0;
  while (true) {
    const auto colon = text.find(':', begin);
    parts.push_back(text.substr(begin, colon - begin));
    if (colon == std::string::npos) break;
    begin = colon + 1;
  }
  try {
    if (parts.size() == 1) {
      *lo = *hi = std::stod(parts[0]);
      *step = 1.0;
    } else if (parts.size() == 2 || parts.size() == 3) {
      *lo = std::stod(parts[0]);
      *hi = std::stod(parts[1]);
      *step = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
    } else {
      throw std::invalid_argument("");
    }
  } catch (const std::exception&) {
    throw riffle::usage_error("malformed c range: " + text + " (expected lo:hi[:step])");
  }
  if (*step <= 0.0 || *hi < *lo) throw riffle::usage_error("empty c range: " + text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"biased riffle shuffle mixing distances"};
  app.require_subcommand(1);

  riffle::RunConfig cfg;
  std::string k_text;
  std::string k_range_text;
  std::string c_range_text;
  std::string backend_text = "float";
  std::string format_text = "csv";

  auto add_common = [&](CLI::App* sub, bool needs_seed) {
    sub->add_option("--n", cfg.n, "deck size")->required();
    sub->add_option("--theta", cfg.theta_text,
                    "cut bias: p/q or decimal, interpreted exactly on the exact backend");
    sub->add_option("--k", k_text, "single round count (or k_max for sst)");
    sub->add_option("--k-range", k_range_text, "round counts lo:hi");
    sub->add_option("--c-range", c_range_text, "cutoff offsets lo:hi[:step]");
    sub->add_option("--trials", cfg.trials, "Monte Carlo sample count");
    auto* seed = sub->add_option("--seed", cfg.seed, "master seed for all rng streams");
    if (needs_seed) seed->required();
    sub->add_option("--backend", backend_text, "exact | float")
        ->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--format", format_text, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--partition-cap", cfg.partition_cap, "max n for partition sums");
    sub->add_option("--enum-cap", cfg.enum_cap, "max n for full-law enumeration");
    return sub;
  };

  add_common(app.add_subcommand("distances", "exact and closed-form distance curves"), false);
  add_common(app.add_subcommand("simulate", "empirical law of k forward shuffles"), true);
  add_common(app.add_subcommand("sst", "stopping-time tail against separation"), true);
  add_common(app.add_subcommand("cutoff", "separation along the cutoff window"), false);
  add_common(app.add_subcommand("spectrum", "transition-operator spectrum"), false);
  add_common(app.add_subcommand("asym", "saddle-point approximation of ell(k,n)"), false);
  app.add_subcommand("validate", "run the verification suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion") {
      return app.exit(e);
    }
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    cfg.command = sub->get_name();
    if (cfg.command == "validate") {
      return riffle::run_acceptance(std::cout) ? 0 : 1;
    }
    if (cfg.n < 1) throw riffle::usage_error("--n must be >= 1");
    cfg.seed_set = sub->count("--seed") > 0;
    cfg.backend = backend_text == "exact" ? riffle::Backend::exact : riffle::Backend::floating;
    cfg.format = format_text == "json" ? riffle::OutputFormat::json : riffle::OutputFormat::csv;
    if (!k_text.empty() && !k_range_text.empty()) {
      throw riffle::usage_error("--k and --k-range are mutually exclusive");
    }
    if (!k_text.empty()) {
      parse_int_range(k_text, &cfg.k_lo, &cfg.k_hi);
      if (cfg.command == "sst") cfg.k_max = cfg.k_hi;
    } else if (!k_range_text.empty()) {
      parse_int_range(k_range_text, &cfg.k_lo, &cfg.k_hi);
      if (cfg.command == "sst") cfg.k_max = cfg.k_hi;
    }
    if (!c_range_text.empty()) {
      parse_c_range(c_range_text, &cfg.c_lo, &cfg.c_hi, &cfg.c_step);
    } else if (cfg.command == "cutoff") {
      cfg.c_lo = -4.0;
      cfg.c_hi = 4.0;
      cfg.c_step = 1.0;
    }
    return riffle::run_command(cfg, std::cout);
  } catch (const riffle::usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const riffle::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const riffle::divergence_error& e) {
    std::cerr << "divergence error: " << e.what() << "\n";
    return 4;
  } catch (const riffle::validity_error& e) {
    std::cerr << "validity error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
