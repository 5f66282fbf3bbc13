#include "riffle/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "riffle/asymptotics.hpp"
#include "riffle/commands.hpp"
#include "riffle/distances.hpp"
#include "riffle/measure.hpp"
#include "riffle/perm.hpp"
#include "riffle/qsym.hpp"

namespace riffle {

namespace {

constexpr std::uint64_t kSeed = 20260808;

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

// --- independent oracle for criterion 2: enumerate every binomial cut and
// every drop sequence of one two-pile shuffle, tracking exact probabilities.
// Cards drop from packet bottoms; earlier drops end up lower in the deck.
std::vector<Rational> brute_force_one_shuffle_law(int n, const Rational& theta) {
  std::vector<Rational> law(factorial_u64(n), Rational(0));
  Int binom = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    const Rational cut_prob = Rational(binom) * scalar_pow(theta, j) *
                              scalar_pow(Rational(1) - theta, n - j);
    std::vector<int> drops;
    auto rec = [&](auto&& self, int a, int b, const Rational& prob) -> void {
      if (a == 0 && b == 0) {
        std::vector<int> word(drops.rbegin(), drops.rend());
        law[lex_rank(Permutation(std::move(word)))] += cut_prob * prob;
        return;
      }
      const int total = a + b;
      if (a > 0) {
        drops.push_back(a);  // bottom card of the left packet (cards 1..j)
        self(self, a - 1, b, prob * Rational(a, total));
        drops.pop_back();
      }
      if (b > 0) {
        drops.push_back(j + b);  // bottom card of the right packet (cards j+1..n)
        self(self, a, b - 1, prob * Rational(b, total));
        drops.pop_back();
      }
    };
    rec(rec, j, n - j, Rational(1));
  }
  return law;
}

// Chunked empirical tally of k forward shuffles (or inverse samples mapped
// through inversion), deterministic in (seed, trials).
std::vector<long long> empirical_counts(int n, const BiasVector<double>& theta, int k,
                                        long long trials, std::uint64_t seed, bool inverse) {
  const std::uint64_t cells = factorial_u64(n);
  constexpr int kChunks = 64;
  std::vector<std::vector<long long>> per_chunk(kChunks, std::vector<long long>(cells, 0));
  const int workers = std::min(thread_count(), kChunks);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int c = w; c < kChunks; c += workers) {
        const long long begin = trials * c / kChunks;
        const long long end = trials * (c + 1) / kChunks;
        RngStream rng(seed, static_cast<std::uint64_t>(c));
        for (long long i = begin; i < end; ++i) {
          const Permutation w_draw = inverse ? inverse_sample(n, theta, rng, k).inverse()
                                             : forward_sample(n, theta, rng, k);
          ++per_chunk[c][lex_rank(w_draw)];
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  std::vector<long long> counts(cells, 0);
  for (int c = 0; c < kChunks; ++c) {
    for (std::uint64_t r = 0; r < cells; ++r) counts[r] += per_chunk[c][r];
  }
  return counts;
}

double tv_against_law(const std::vector<long long>& counts, const ShuffleLaw<double>& law,
                      long long trials) {
  double tv = 0.0;
  for (size_t r = 0; r < counts.size(); ++r) {
    tv += std::abs(static_cast<double>(counts[r]) / trials - law.probs[r]);
  }
  return tv / 2.0;
}

struct Check {
  static constexpr int kMaxFailureLines = 12;
  bool pass = true;
  int failures = 0;
  std::vector<std::string> details;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    ++failures;
    if (failures <= kMaxFailureLines) {
      details.push_back("FAILED: " + what);
    } else if (failures == kMaxFailureLines + 1) {
      details.push_back("FAILED: (further failures suppressed)");
    }
  }
  void note(const std::string& line) { details.push_back(line); }

  void finish() {
    if (failures > kMaxFailureLines) {
      details.push_back("total failed checks: " + std::to_string(failures));
    }
  }
};

// 1. Partition closed forms match full-law enumeration exactly on rationals.
Check criterion_closed_forms() {
  Check c;
  const std::vector<Rational> thetas = {Rational(1, 2), Rational(3, 10), Rational(7, 10)};
  for (int n = 2; n <= 7; ++n) {
    for (const Rational& theta : thetas) {
      const auto bias = BiasVector<Rational>::two_pile(theta);
      for (int k = 1; k <= 3; ++k) {
        const auto law = exact_law(n, convolve_power(bias, k));
        const auto ext = law_extremes(law);
        const Rational sep_cf = sep_partition(n, theta, k);
        const Rational linf_cf = linf_partition(n, theta, k);
        c.expect(sep_cf == ext.sep, "sep mismatch at n=" + std::to_string(n) + " theta=" +
                                        to_string(theta) + " k=" + std::to_string(k));
        c.expect(linf_cf == ext.linf, "linf mismatch at n=" + std::to_string(n) + " theta=" +
                                          to_string(theta) + " k=" + std::to_string(k));
      }
    }
  }
  return c;
}

// 2. One-shuffle law equals the cut-and-drop enumeration oracle.
Check criterion_stanley_vs_brute_force() {
  Check c;
  for (const Rational& theta : {Rational(1, 2), Rational(3, 10)}) {
    const auto oracle = brute_force_one_shuffle_law(3, theta);
    const auto law = exact_law(3, BiasVector<Rational>::two_pile(theta));
    for (size_t r = 0; r < oracle.size(); ++r) {
      c.expect(oracle[r] == law.probs[r],
               "law mismatch at rank " + std::to_string(r) + " theta=" + to_string(theta));
    }
  }
  const auto half_law = exact_law(3, BiasVector<Rational>::two_pile(Rational(1, 2)));
  const std::vector<Rational> frozen = {Rational(1, 2), Rational(1, 8), Rational(1, 8),
                                        Rational(1, 8), Rational(1, 8), Rational(0)};
  c.expect(half_law.probs == frozen, "theta=1/2 law differs from (1/2,1/8,1/8,1/8,1/8,0)");
  return c;
}

// 3. Seeded Monte Carlo agrees with the exact law in total variation.
Check criterion_monte_carlo() {
  Check c;
  const int n = 5;
  const long long trials = 1'000'000;
  const auto theta = BiasVector<double>::two_pile(0.3);
  const auto law = exact_law(n, theta);
  const double tv_fwd = tv_against_law(empirical_counts(n, theta, 1, trials, kSeed, false),
                                       law, trials);
  c.note("forward TV = " + fmt(tv_fwd));
  c.expect(tv_fwd <= 0.005, "forward sampler TV " + fmt(tv_fwd) + " > 0.005");
  const double tv_inv = tv_against_law(empirical_counts(n, theta, 1, trials, kSeed + 1, true),
                                       law, trials);
  c.note("inverse TV = " + fmt(tv_inv));
  c.expect(tv_inv <= 0.005, "inverse sampler TV " + fmt(tv_inv) + " > 0.005");
  return c;
}

// 4. Strong stationary time tail reproduces separation.
Check criterion_sst_equals_separation() {
  Check c;
  const int n = 6;
  const long long trials = 1'000'000;
  const auto tail = sst_tail_mc(n, BiasVector<double>::two_pile(0.4), 12, trials, kSeed);
  double worst = 0.0;
  int worst_k = 0;
  for (int k = 1; k <= 12; ++k) {
    const double gap = std::abs(tail.tail[k] - sep_partition(n, 0.4, k));
    if (gap > worst) {
      worst = gap;
      worst_k = k;
    }
  }
  c.note("max |P{T>k} - SEP(k)| = " + fmt(worst) + " at k=" + std::to_string(worst_k));
  c.expect(worst <= 0.01, "max tail gap " + fmt(worst) + " > 0.01");
  return c;
}

// 5. Spectrum sanity: class sizes, trace identities, explicit matrix.
Check criterion_spectrum() {
  Check c;
  for (int n = 1; n <= 40; ++n) {
    Int sum = 0;
    for (const auto& entry : spectrum(n, 0.5)) sum += entry.multiplicity;
    c.expect(sum == factorial(n), "multiplicities at n=" + std::to_string(n) +
                                      " sum to " + sum.str() + " not n!");
  }
  for (int n = 1; n <= 8; ++n) {
    for (const Rational& theta : {Rational(1, 2), Rational(3, 10)}) {
      Rational weighted(0);
      for (const auto& entry : spectrum(n, theta)) {
        weighted += entry.eigenvalue * Rational(entry.multiplicity);
      }
      const std::vector<Rational> x = {theta, Rational(1) - theta};
      const Rational trace = Rational(factorial(n)) * eval_complete(n, std::span<const Rational>(x));
      c.expect(weighted == trace, "eigenvalue-weighted sum != n! h_n at n=" + std::to_string(n) +
                                      " theta=" + to_string(theta));
    }
  }
  // Explicit transition matrix K(u,v) = P(v u^{-1}); rows sum to one and
  // the trace matches the spectrum.
  for (int n = 2; n <= 5; ++n) {
    for (const Rational& theta : {Rational(1, 2), Rational(3, 10)}) {
      const auto bias = BiasVector<Rational>::two_pile(theta);
      const auto perms = all_permutations(n);
      const auto law = exact_law(n, bias);
      Rational trace(0);
      bool rows_ok = true;
      for (const auto& u : perms) {
        Rational row_sum(0);
        const Permutation u_inv = u.inverse();
        for (const auto& v : perms) {
          const Rational entry = law.prob(compose(v, u_inv));
          row_sum += entry;
          if (v == u) trace += entry;
        }
        rows_ok = rows_ok && (row_sum == 1);
      }
      c.expect(rows_ok, "transition matrix rows do not sum to 1 at n=" + std::to_string(n));
      Rational weighted(0);
      for (const auto& entry : spectrum(n, theta)) {
        weighted += entry.eigenvalue * Rational(entry.multiplicity);
      }
      c.expect(trace == weighted, "matrix trace != eigenvalue sum at n=" + std::to_string(n) +
                                      " theta=" + to_string(theta));
    }
  }
  return c;
}

// 6. Birthday identities and the union bound.
Check criterion_birthday() {
  Check c;
  const std::vector<std::vector<Rational>> etas = {
      {Rational(1, 2), Rational(1, 2)},
      {Rational(3, 10), Rational(7, 10)},
      {Rational(1, 2), Rational(1, 3), Rational(1, 6)},
      {Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)},
      {Rational(2, 5), Rational(1, 5), Rational(1, 5), Rational(1, 5)}};
  for (const auto& eta : etas) {
    const std::span<const Rational> x(eta);
    const Rational lhs = birthday_exact(3, x);
    const Rational rhs = Rational(3) * eval_power(2, x) - Rational(2) * eval_power(3, x);
    c.expect(lhs == rhs, "inclusion-exclusion identity fails for eta size " +
                             std::to_string(eta.size()));
    for (int n = 2; n <= 5; ++n) {
      c.expect(birthday_exact(n, x) == birthday_exact_partition(n, x),
               "partition form differs from 1 - n! e_n at n=" + std::to_string(n));
    }
  }
  for (int n = 2; n <= 7; ++n) {
    for (const Rational& theta : {Rational(1, 2), Rational(3, 10), Rational(7, 10)}) {
      for (int k = 1; k <= 3; ++k) {
        c.expect(sep_partition(n, theta, k) <= birthday_bound(n, theta, k),
                 "sep > birthday bound at n=" + std::to_string(n));
      }
    }
  }
  for (double theta : {0.5, 0.35}) {
    for (int k = 1; k <= 30; ++k) {
      c.expect(sep_partition(52, theta, k) <= birthday_bound(52, theta, k),
               "sep > birthday bound at n=52 theta=" + fmt(theta) + " k=" + std::to_string(k));
    }
  }
  return c;
}

// 7. Saddle-point approximation of ell(k,n) against the exact partition sum,
// inside the approximation's own stated validity region.
Check criterion_ell_approx() {
  Check c;
  for (int n : {40, 52, 60}) {
    for (double theta : {0.5, 0.35}) {
      for (double cc : {1.0, 2.0, 3.0}) {
        const int k = cutoff_k(n, theta, cc);
        const AsymptoticEstimate est = ell_approx(n, theta, k);
        const double exact = ell_from_linf(linf_partition(n, theta, k));
        const double rel = std::abs(exact / est.ell - 1.0);
        const double budget = 10.0 * (1.0 + est.big_m) / std::sqrt(n);
        const std::string tag = "n=" + std::to_string(n) + " theta=" + fmt(theta) +
                                " c=" + fmt(cc) + " k=" + std::to_string(k);
        c.note(tag + ": M=" + fmt(est.big_m) + " threshold=" + fmt(est.validity_threshold) +
               " valid=" + (est.valid ? "true" : "false") + " rel_err=" + fmt(rel) +
               " budget=" + fmt(budget));
        c.expect(est.valid, tag + ": validity flag false (M=" + fmt(est.big_m) + " > " +
                                fmt(est.validity_threshold) + ")");
        c.expect(rel <= budget, tag + ": relative error " + fmt(rel) + " > " + fmt(budget));
      }
    }
  }
  return c;
}

// 8. The exact separation curve along the cutoff window.
Check criterion_cutoff_shape() {
  Check c;
  const int n = 52;
  const Rational theta(1, 2);
  std::vector<double> seps;
  std::vector<Rational> seps_exact;
  for (int cc = -4; cc <= 4; ++cc) {
    const int k = cutoff_k(n, 0.5, cc);
    const Rational sep = sep_partition(n, theta, k);
    seps_exact.push_back(sep);
    seps.push_back(to_double(sep));
    const double limit = 1.0 - std::exp(-std::exp(-static_cast<double>(cc)));
    c.note("c=" + std::to_string(cc) + " k=" + std::to_string(k) + " sep=" +
           fmt(seps.back()) + " limit=" + fmt(limit) + " gap=" + fmt(std::abs(seps.back() - limit)));
  }
  for (size_t i = 0; i + 1 < seps_exact.size(); ++i) {
    c.expect(seps_exact[i + 1] < seps_exact[i],
             "SEP not strictly decreasing between c=" + std::to_string(static_cast<int>(i) - 4) +
                 " and c=" + std::to_string(static_cast<int>(i) - 3));
  }
  c.expect(seps.front() > 0.95, "SEP at c=-4 is " + fmt(seps.front()) + " <= 0.95");
  c.expect(seps.back() < 0.15, "SEP at c=4 is " + fmt(seps.back()) + " >= 0.15");
  for (int cc = 0; cc <= 4; ++cc) {
    const double limit = 1.0 - std::exp(-std::exp(-static_cast<double>(cc)));
    const double gap = std::abs(seps[static_cast<size_t>(cc) + 4] - limit);
    c.expect(gap <= 0.12, "c=" + std::to_string(cc) + ": |SEP - (1-exp(-e^-c))| = " + fmt(gap) +
                              " > 0.12");
  }
  return c;
}

// 9. Strict refinement monotonicity of the one-shuffle law.
Check criterion_refinement_monotonicity() {
  Check c;
  const Rational theta(3, 10);
  for (int n = 2; n <= 6; ++n) {
    const auto bias = BiasVector<Rational>::two_pile(theta);
    const std::uint32_t masks = 1u << (n - 1);
    // Values of the law by inverse-descent mask; every mask is realized.
    std::vector<Rational> value(masks);
    std::vector<bool> seen(masks, false);
    for_each_permutation(n, [&](const Permutation& w) {
      std::uint32_t mask = 0;
      for (int e : ides(w).elements) mask |= 1u << (e - 1);
      if (!seen[mask]) {
        value[mask] = exact_prob(w, bias);
        seen[mask] = true;
      }
    });
    bool all_seen = true;
    for (bool s : seen) all_seen = all_seen && s;
    c.expect(all_seen, "not every inverse descent set realized at n=" + std::to_string(n));
    for (std::uint32_t big = 0; big < masks; ++big) {
      for (std::uint32_t small = 0; small < masks; ++small) {
        if (big == small || (big & small) != small) continue;  // need big ⊋ small
        c.expect(value[big] < value[small],
                 "probability not strictly decreasing for mask pair (" + std::to_string(big) +
                     "," + std::to_string(small) + ") at n=" + std::to_string(n));
      }
    }
  }
  return c;
}

// 10. The criterion-3 command is reproducible byte for byte.
Check criterion_determinism() {
  Check c;
  RunConfig cfg;
  cfg.command = "simulate";
  cfg.n = 5;
  cfg.theta_text = "3/10";
  cfg.k_lo = cfg.k_hi = 1;
  cfg.trials = 1'000'000;
  cfg.seed = kSeed;
  cfg.seed_set = true;
  auto read_file = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  for (const char* format : {"csv", "json"}) {
    cfg.format = std::string(format) == "csv" ? OutputFormat::csv : OutputFormat::json;
    const std::string path_a = std::string("acceptance_rerun_a.") + format;
    const std::string path_b = std::string("acceptance_rerun_b.") + format;
    cfg.out = path_a;
    std::ostringstream sink;
    run_command(cfg, sink);
    cfg.out = path_b;
    run_command(cfg, sink);
    const std::string a = read_file(path_a);
    const std::string b = read_file(path_b);
    c.expect(!a.empty() && a == b,
             std::string("re-run with the same seed produced different ") + format + " bytes");
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
  }
  return c;
}

struct Criterion {
  const char* title;
  Check (*run)();
  double budget_seconds;
};

const Criterion kCriteria[kCriterionCount] = {
    {"closed forms match enumeration exactly (rational backend)", criterion_closed_forms, 60.0},
    {"one-shuffle law matches cut-and-drop brute force", criterion_stanley_vs_brute_force, 1.0},
    {"seeded Monte Carlo matches exact law (TV <= 0.005)", criterion_monte_carlo, 30.0},
    {"stopping-time tail matches separation (gap <= 0.01)", criterion_sst_equals_separation, 60.0},
    {"spectrum multiplicities, trace identities, explicit matrix", criterion_spectrum, 30.0},
    {"birthday identities and union bound", criterion_birthday, 30.0},
    {"ell(k,n) approximation within its own error form", criterion_ell_approx, 120.0},
    {"separation cutoff shape at n=52", criterion_cutoff_shape, 120.0},
    {"strict refinement monotonicity", criterion_refinement_monotonicity, 30.0},
    {"same-seed re-run is byte identical", criterion_determinism, 60.0},
};

}  // namespace

CriterionResult run_criterion(int id) {
  if (id < 1 || id > kCriterionCount) {
    throw std::invalid_argument("run_criterion: id out of range");
  }
  const Criterion& spec = kCriteria[id - 1];
  const auto start = Clock::now();
  Check check = spec.run();
  check.finish();
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  CriterionResult result;
  result.id = id;
  result.title = spec.title;
  result.seconds = elapsed;
  result.pass = check.pass;
  if (elapsed > spec.budget_seconds) {
    result.pass = false;
    check.details.push_back("FAILED: runtime " + fmt(elapsed) + "s exceeds budget " +
                            fmt(spec.budget_seconds) + "s");
  }
  result.details = std::move(check.details);
  return result;
}

bool run_acceptance(std::ostream& os) {
  bool all = true;
  for (int id = 1; id <= kCriterionCount; ++id) {
    const CriterionResult r = run_criterion(id);
    all = all && r.pass;
    os << (r.pass ? "PASS" : "FAIL") << " criterion " << r.id << " (" << fmt(r.seconds)
       << "s): " << r.title << "\n";
    for (const auto& line : r.details) os << "    " << line << "\n";
  }
  os << (all ? "acceptance: all criteria passed" : "acceptance: some criteria FAILED") << "\n";
  return all;
}

}  // namespace riffle
