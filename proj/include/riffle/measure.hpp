#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riffle/errors.hpp"
#include "riffle/perm.hpp"
#include "riffle/qsym.hpp"
#include "riffle/rng.hpp"

namespace riffle {

inline constexpr std::size_t kDefaultWeightCap = std::size_t{1} << 24;

namespace detail {
// Compensated summation: convolution powers produce millions of entries
// and a naive sum can drift past the tolerance on its own.
inline void check_prob_sum(std::span<const double> w) {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : w) {
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("BiasVector: entry outside [0,1]");
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("BiasVector: entries must sum to 1");
  }
}
inline void check_prob_sum(std::span<const Rational> w) {
  Rational sum(0);
  for (const Rational& v : w) {
    if (v < 0 || v > 1) throw std::invalid_argument("BiasVector: entry outside [0,1]");
    sum += v;
  }
  if (sum != 1) throw std::invalid_argument("BiasVector: entries must sum to exactly 1");
}
}  // namespace detail

// Pile weights theta = (theta_1,...,theta_a). Order matters: entry i is
// the weight of pile i, and pile 1 ends on top after an inverse shuffle.
template <class S>
class BiasVector {
 public:
  explicit BiasVector(std::vector<S> weights) : w_(std::move(weights)) {
    if (w_.empty()) throw std::invalid_argument("BiasVector: needs at least one pile");
    detail::check_prob_sum(std::span<const S>(w_));
  }

  static BiasVector two_pile(const S& theta) { return BiasVector({theta, S(1) - theta}); }
  static BiasVector trivial() { return BiasVector({S(1)}); }

  int piles() const { return static_cast<int>(w_.size()); }
  std::span<const S> entries() const { return w_; }
  const S& operator[](int i) const { return w_[i]; }

 private:
  std::vector<S> w_;
};

// (theta * eta)_{(i,j)} = theta_i eta_j, ordered with i major. Composing
// one theta-shuffle after one eta-shuffle equals a single (theta*eta)-shuffle.
template <class S>
BiasVector<S> convolve(const BiasVector<S>& theta, const BiasVector<S>& eta) {
  std::vector<S> out;
  out.reserve(static_cast<size_t>(theta.piles()) * eta.piles());
  for (const S& t : theta.entries()) {
    for (const S& e : eta.entries()) out.push_back(t * e);
  }
  return BiasVector<S>(std::move(out));
}

// k-fold convolution power; k = 0 is the single-pile identity.
template <class S>
BiasVector<S> convolve_power(const BiasVector<S>& theta, int k,
                             std::size_t weight_cap = kDefaultWeightCap) {
  if (k < 0) throw std::invalid_argument("convolve_power: negative k");
  double log_size = k * std::log(static_cast<double>(theta.piles()));
  if (log_size > std::log(static_cast<double>(weight_cap)) + 1e-9) {
    throw capacity_error("convolve_power: " + std::to_string(theta.piles()) + "^" +
                         std::to_string(k) + " weights exceed the weight cap " +
                         std::to_string(weight_cap));
  }
  BiasVector<S> acc = BiasVector<S>::trivial();
  for (int i = 0; i < k; ++i) acc = convolve(acc, theta);
  return acc;
}

// One-shuffle probability of w: the fundamental quasisymmetric function
// indexed by the descent set of w^{-1}, evaluated at the pile weights.
// Convolution powers are handled by passing convolve_power(theta, k).
template <class S>
S exact_prob(const Permutation& w, const BiasVector<S>& theta) {
  return eval_fundamental(ides(w), theta.entries());
}

enum class Provenance { closed_form, enumerated, empirical };

template <class S>
struct ShuffleLaw {
  int n = 0;
  std::vector<S> probs;  // indexed by lexicographic rank
  Provenance provenance = Provenance::closed_form;

  const S& prob(const Permutation& w) const { return probs[lex_rank(w)]; }
};

// Full law on S_n. Probabilities of permutations with equal inverse
// descent sets coincide, so evaluation is memoized per descent subset.
template <class S>
ShuffleLaw<S> exact_law(int n, const BiasVector<S>& theta, int enum_cap = kDefaultEnumCap) {
  ShuffleLaw<S> law;
  law.n = n;
  law.provenance = Provenance::closed_form;
  law.probs.reserve(static_cast<size_t>(factorial_u64(n)));
  std::vector<S> by_subset(static_cast<size_t>(1) << (n - 1), S(0));
  std::vector<bool> ready(by_subset.size(), false);
  for_each_permutation(
      n,
      [&](const Permutation& w) {
        const DescentSubset d = ides(w);
        std::uint32_t mask = 0;
        for (int e : d.elements) mask |= 1u << (e - 1);
        if (!ready[mask]) {
          by_subset[mask] = eval_fundamental(d, theta.entries());
          ready[mask] = true;
        }
        law.probs.push_back(by_subset[mask]);
      },
      enum_cap);
  return law;
}

// --- Monte Carlo side (double only) ---

// One forward theta-shuffle of the deck: multinomial cut into contiguous
// packets from the top, then sequential drops proportional to packet size.
void forward_shuffle(std::vector<int>& deck, const BiasVector<double>& theta, RngStream& rng);

// Law of k forward shuffles started at the identity.
Permutation forward_sample(int n, const BiasVector<double>& theta, RngStream& rng, int k = 1);

// One inverse theta-shuffle: label each card independently, then stable-sort
// by label with label-1 cards on top. The inverse of the result is a
// forward-shuffle draw.
void inverse_shuffle(std::vector<int>& deck, const BiasVector<double>& theta, RngStream& rng);

Permutation inverse_sample(int n, const BiasVector<double>& theta, RngStream& rng, int k = 1);

inline constexpr int kDefaultSstCap = 64;

struct SSTSample {
  int stopping_time = 0;  // first prefix length with all card labels distinct
  bool censored = false;  // true when k_max was reached first
  Permutation final_deck;
};

// Runs the inverse-shuffle chain with per-card digit streams until the
// digit prefixes of all n cards are distinct (or k_max is hit). For n = 1
// the stopping time is 1 by convention.
SSTSample sst_sample(int n, const BiasVector<double>& theta, RngStream& rng,
                     int k_max = kDefaultSstCap);

// Widens a rational bias vector for the samplers.
BiasVector<double> to_double(const BiasVector<Rational>& theta);

}  // namespace riffle
