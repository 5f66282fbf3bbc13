#include "riffle/distances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace riffle {

namespace {

void check_rounds(int k) {
  if (k < 0) throw std::invalid_argument("partition sum: negative round count k");
}

// Kahan-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct PartitionSums {
  double signed_tail;    // sum over lambda != (1^n) of sgn(lambda) * term
  double unsigned_tail;  // same sum without signs
};

// Both closed forms share the same cycle-type sum; the (1^n) term equals 1
// exactly and is peeled off symbolically, so the results below are the
// distances themselves rather than 1 - (1 - small).
PartitionSums partition_sums_float(int n, double theta, int k, int cap) {
  check_rounds(k);
  detail::check_partition_cap(n, cap);
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("partition sum: theta must lie strictly inside (0,1)");
  }
  std::vector<double> lnfact(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 1; i <= n; ++i) lnfact[i] = lnfact[i - 1] + std::log(static_cast<double>(i));
  std::vector<double> ln_theta_j(static_cast<size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    ln_theta_j[j] = std::log(std::pow(theta, j) + std::pow(1.0 - theta, j));
  }
  CompensatedSum signed_sum;
  CompensatedSum unsigned_sum;
  for_each_partition(n, [&](std::span<const int> parts) {
    const int len = static_cast<int>(parts.size());
    if (len == n) return;  // lambda = (1^n)
    double ln_z = 0.0;
    double ln_prod = 0.0;
    size_t i = 0;
    while (i < parts.size()) {
      size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      const int mult = static_cast<int>(j - i);
      ln_z += mult * std::log(static_cast<double>(parts[i])) + lnfact[mult];
      ln_prod += static_cast<double>(k) * mult * ln_theta_j[parts[i]];
      i = j;
    }
    const double term = std::exp(lnfact[n] - ln_z + ln_prod);
    unsigned_sum.add(term);
    signed_sum.add(((n - len) % 2) ? -term : term);
  });
  return {signed_sum.sum, unsigned_sum.sum};
}

// With theta = p/q, every term of the cycle-type sum has denominator
// q^{kn} exactly, so the sum accumulates in plain integers and reduces
// once at the end. This is what keeps the exact path usable at n = 52.
void partition_sums_exact(int n, const Rational& theta, int k, int cap,
                          Rational* signed_out, Rational* unsigned_out) {
  check_rounds(k);
  detail::check_partition_cap(n, cap);
  if (!(theta > 0 && theta < 1)) {
    throw std::invalid_argument("partition sum: theta must lie strictly inside (0,1)");
  }
  const Int p = numerator(theta);
  const Int q = denominator(theta);
  const Int r = q - p;
  std::vector<Int> theta_j_num(static_cast<size_t>(n) + 1, Int(1));
  for (int j = 1; j <= n; ++j) {
    theta_j_num[j] = scalar_pow(Int(scalar_pow(p, j) + scalar_pow(r, j)), k);
  }
  const Int nfact = factorial(n);
  Int signed_num = 0;
  Int unsigned_num = 0;
  for_each_partition(n, [&](std::span<const int> parts) {
    const int len = static_cast<int>(parts.size());
    if (len == n) return;
    Int z = 1;
    size_t i = 0;
    Int prod = 1;
    while (i < parts.size()) {
      size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      const int mult = static_cast<int>(j - i);
      z *= scalar_pow(Int(parts[i]), mult);
      for (int f = 2; f <= mult; ++f) z *= f;
      prod *= scalar_pow(theta_j_num[parts[i]], mult);
      i = j;
    }
    const Int term = (nfact / z) * prod;
    unsigned_num += term;
    if ((n - len) % 2) {
      signed_num -= term;
    } else {
      signed_num += term;
    }
  });
  const Int denom = scalar_pow(q, static_cast<long long>(k) * n);
  *signed_out = Rational(signed_num, denom);
  *unsigned_out = Rational(unsigned_num, denom);
}

// With 2^k < n the reversal cannot be reached after k two-pile rounds, so
// separation is exactly 1; the alternating sum reproduces that value only
// through total cancellation, which the float path cannot survive.
bool separation_saturated(int n, int k) {
  return k < 63 && (std::uint64_t{1} << k) < static_cast<std::uint64_t>(n);
}

}  // namespace

double sep_partition(int n, double theta, int k, int partition_cap) {
  check_rounds(k);
  detail::check_partition_cap(n, partition_cap);
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("partition sum: theta must lie strictly inside (0,1)");
  }
  if (separation_saturated(n, k)) return 1.0;
  return -partition_sums_float(n, theta, k, partition_cap).signed_tail;
}

Rational sep_partition(int n, const Rational& theta, int k, int partition_cap) {
  Rational s, u;
  partition_sums_exact(n, theta, k, partition_cap, &s, &u);
  return -s;
}

double linf_partition(int n, double theta, int k, int partition_cap) {
  return partition_sums_float(n, theta, k, partition_cap).unsigned_tail;
}

Rational linf_partition(int n, const Rational& theta, int k, int partition_cap) {
  Rational s, u;
  partition_sums_exact(n, theta, k, partition_cap, &s, &u);
  return u;
}

std::vector<SpectrumEntryF> spectrum(int n, double theta, int partition_cap) {
  detail::check_partition_cap(n, partition_cap);
  std::vector<double> theta_j(static_cast<size_t>(n) + 1, 0.0);
  for (int j = 1; j <= n; ++j) theta_j[j] = std::pow(theta, j) + std::pow(1.0 - theta, j);
  const Int nfact = factorial(n);
  std::vector<SpectrumEntryF> out;
  for_each_partition(n, [&](std::span<const int> parts) {
    Partition lambda(std::vector<int>(parts.begin(), parts.end()));
    double eig = 1.0;
    for (int p : parts) eig *= theta_j[p];
    const Int mult = nfact / z_of(lambda);
    out.push_back({std::move(lambda), eig, mult});
  });
  return out;
}

std::vector<SpectrumEntryQ> spectrum(int n, const Rational& theta, int partition_cap) {
  detail::check_partition_cap(n, partition_cap);
  const Rational complement = Rational(1) - theta;
  std::vector<Rational> theta_j(static_cast<size_t>(n) + 1, Rational(0));
  for (int j = 1; j <= n; ++j) {
    theta_j[j] = Rational(scalar_pow(theta, j) + scalar_pow(complement, j));
  }
  const Int nfact = factorial(n);
  std::vector<SpectrumEntryQ> out;
  for_each_partition(n, [&](std::span<const int> parts) {
    Partition lambda(std::vector<int>(parts.begin(), parts.end()));
    Rational eig(1);
    for (int p : parts) eig *= theta_j[p];
    const Int mult = nfact / z_of(lambda);
    out.push_back({std::move(lambda), std::move(eig), mult});
  });
  return out;
}

int thread_count() {
  if (const char* env = std::getenv("RIFFLE_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

SstTail sst_tail_mc(int n, const BiasVector<double>& theta, int k_max, long long trials,
                    std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("sst_tail_mc: needs trials >= 1");
  if (k_max < 1) throw std::invalid_argument("sst_tail_mc: needs k_max >= 1");
  constexpr int kChunks = 64;
  // hist[t] counts stopping times equal to t; censored runs land in the
  // overflow bin, so they remain inside every tail count up to k_max.
  std::vector<std::vector<long long>> hists(
      kChunks, std::vector<long long>(static_cast<size_t>(k_max) + 2, 0));
  const int workers = std::min(thread_count(), kChunks);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      for (int c = w; c < kChunks; c += workers) {
        const long long begin = trials * c / kChunks;
        const long long end = trials * (c + 1) / kChunks;
        RngStream rng(seed, static_cast<std::uint64_t>(c));
        for (long long i = begin; i < end; ++i) {
          const SSTSample s = sst_sample(n, theta, rng, k_max);
          const size_t bin = s.censored ? static_cast<size_t>(k_max) + 1
                                        : static_cast<size_t>(s.stopping_time);
          ++hists[c][bin];
        }
      }
    });
  }
  for (auto& t : pool) t.join();

  std::vector<long long> hist(static_cast<size_t>(k_max) + 2, 0);
  SstTail out;
  out.k_max = k_max;
  out.trials = trials;
  for (int c = 0; c < kChunks; ++c) {
    for (size_t t = 0; t < hist.size(); ++t) hist[t] += hists[c][t];
  }
  out.censored = hist.back();
  out.tail.resize(static_cast<size_t>(k_max) + 1, 0.0);
  out.std_error.resize(static_cast<size_t>(k_max) + 1, 0.0);
  long long exceeding = trials;
  for (int k = 0; k <= k_max; ++k) {
    exceeding -= hist[static_cast<size_t>(k)];  // hist[0] is always empty
    const double p = static_cast<double>(exceeding) / static_cast<double>(trials);
    out.tail[static_cast<size_t>(k)] = p;
    out.std_error[static_cast<size_t>(k)] =
        std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(trials));
  }
  return out;
}

}  // namespace riffle
