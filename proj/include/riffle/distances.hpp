#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "riffle/measure.hpp"
#include "riffle/perm.hpp"
#include "riffle/qsym.hpp"

namespace riffle {

inline constexpr int kDefaultPartitionCap = 60;

namespace detail {
inline void check_partition_cap(int n, int cap) {
  if (n > cap) {
    throw capacity_error("partition sum: n = " + std::to_string(n) +
                         " exceeds the partition cap " + std::to_string(cap));
  }
}
}  // namespace detail

// Metrics of a full law against the uniform distribution, together with
// the ranks attaining the extremes.
template <class S>
struct LawExtremes {
  S sep;               // max over w of 1 - n! P(w)
  S linf;              // max over w of |1 - n! P(w)|
  S tv;                // (1/2) sum |P(w) - 1/n!|
  std::uint64_t sep_argmax_rank = 0;
  std::uint64_t linf_argmax_rank = 0;
};

template <class S>
LawExtremes<S> law_extremes(const ShuffleLaw<S>& law) {
  const S uniform = S(1) / detail::int_to_scalar<S>(factorial(law.n));
  LawExtremes<S> out{S(0), S(0), S(0), 0, 0};
  bool first = true;
  for (std::uint64_t r = 0; r < law.probs.size(); ++r) {
    const S ratio_gap = S(1) - law.probs[r] / uniform;
    const S abs_gap = ratio_gap < S(0) ? S(-ratio_gap) : ratio_gap;
    const S dev = law.probs[r] - uniform;
    out.tv += dev < S(0) ? S(-dev) : dev;
    if (first || ratio_gap > out.sep) {
      out.sep = ratio_gap;
      out.sep_argmax_rank = r;
    }
    if (first || abs_gap > out.linf) {
      out.linf = abs_gap;
      out.linf_argmax_rank = r;
    }
    first = false;
  }
  out.tv /= S(2);
  return out;
}

// Enumeration-backed metrics of the k-fold theta-shuffle.
template <class S>
S sep_enum(int n, const BiasVector<S>& theta, int k, int enum_cap = kDefaultEnumCap,
           std::size_t weight_cap = kDefaultWeightCap) {
  return law_extremes(exact_law(n, convolve_power(theta, k, weight_cap), enum_cap)).sep;
}

template <class S>
S linf_enum(int n, const BiasVector<S>& theta, int k, int enum_cap = kDefaultEnumCap,
            std::size_t weight_cap = kDefaultWeightCap) {
  return law_extremes(exact_law(n, convolve_power(theta, k, weight_cap), enum_cap)).linf;
}

template <class S>
S tv_enum(int n, const BiasVector<S>& theta, int k, int enum_cap = kDefaultEnumCap,
          std::size_t weight_cap = kDefaultWeightCap) {
  return law_extremes(exact_law(n, convolve_power(theta, k, weight_cap), enum_cap)).tv;
}

// Closed-form separation of the two-pile theta-shuffle after k rounds:
//   1 - sum over cycle types lambda of sgn * (n!/z_lambda) *
//       prod_i (theta^i + (1-theta)^i)^{k n_i(lambda)}.
// The float overload evaluates terms in log space with sign tracking and
// compensated summation; the rational overload is exact.
double sep_partition(int n, double theta, int k, int partition_cap = kDefaultPartitionCap);
Rational sep_partition(int n, const Rational& theta, int k,
                       int partition_cap = kDefaultPartitionCap);

// Closed-form l-infinity: same sum without signs, minus 1.
double linf_partition(int n, double theta, int k, int partition_cap = kDefaultPartitionCap);
Rational linf_partition(int n, const Rational& theta, int k,
                        int partition_cap = kDefaultPartitionCap);

// Pairwise-collision union bound: C(n,2) (theta^2 + (1-theta)^2)^k.
template <class S>
S birthday_bound(int n, const S& theta, int k) {
  const S collision = theta * theta + (S(1) - theta) * (S(1) - theta);
  return S(n) * S(n - 1) / S(2) * scalar_pow(collision, k);
}

// Probability that n balls dropped independently with box weights eta see
// at least one collision: 1 - n! e_n(eta).
template <class S>
S birthday_exact(int n, std::span<const S> eta) {
  return S(1) - detail::int_to_scalar<S>(factorial(n)) * eval_elementary(n, eta);
}

// Same quantity through the power-sum expansion over cycle types:
//   1 - n! sum_lambda sgn(lambda) z_lambda^{-1} prod_i p_i(eta)^{n_i}.
template <class S>
S birthday_exact_partition(int n, std::span<const S> eta) {
  std::vector<S> powers(static_cast<size_t>(n) + 1, S(0));
  for (int j = 1; j <= n; ++j) powers[j] = eval_power(j, eta);
  S sum(0);
  const Int nfact = factorial(n);
  for_each_partition(n, [&](std::span<const int> parts) {
    S term = detail::int_to_scalar<S>(
        nfact / z_of(Partition(std::vector<int>(parts.begin(), parts.end()))));
    for (int p : parts) term *= powers[p];
    const bool negative = ((n - static_cast<int>(parts.size())) % 2) != 0;
    if (negative) {
      sum -= term;
    } else {
      sum += term;
    }
  });
  return S(1) - sum;
}

struct SpectrumEntryF {
  Partition lambda;
  double eigenvalue;
  Int multiplicity;
};

struct SpectrumEntryQ {
  Partition lambda;
  Rational eigenvalue;
  Int multiplicity;
};

// Transition-operator spectrum of the two-pile theta-shuffle: one entry per
// cycle type, eigenvalue prod_i (theta^i+(1-theta)^i)^{a_i}, multiplicity
// n!/z. Multiplicities over all entries sum to n!.
std::vector<SpectrumEntryF> spectrum(int n, double theta, int partition_cap = kDefaultPartitionCap);
std::vector<SpectrumEntryQ> spectrum(int n, const Rational& theta,
                                     int partition_cap = kDefaultPartitionCap);

// Eigenvalue attached to a word via its Lyndon factor lengths.
template <class S>
S beta_of_word(std::span<const int> word, const S& theta) {
  const S complement = S(1) - theta;
  S beta(1);
  for (int len : lyndon_factorization(word).lengths()) {
    beta *= S(scalar_pow(theta, len) + scalar_pow(complement, len));
  }
  return beta;
}

struct SstTail {
  int k_max = 0;
  long long trials = 0;
  long long censored = 0;
  std::vector<double> tail;        // tail[k] = empirical P{T > k}, k = 0..k_max
  std::vector<double> std_error;   // binomial standard error per entry
};

// Monte Carlo tail of the strong stationary time, chunked over a fixed
// number of derived rng streams so the result is independent of the
// thread count.
SstTail sst_tail_mc(int n, const BiasVector<double>& theta, int k_max, long long trials,
                    std::uint64_t seed);

// Worker count: RIFFLE_THREADS when set, otherwise available parallelism.
int thread_count();

}  // namespace riffle
