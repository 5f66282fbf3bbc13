#include "riffle/measure.hpp"

#include <algorithm>
#include <numeric>

namespace riffle {

void forward_shuffle(std::vector<int>& deck, const BiasVector<double>& theta, RngStream& rng) {
  const int n = static_cast<int>(deck.size());
  const int a = theta.piles();
  // Packet sizes: counts of n independent pile draws are multinomial.
  std::vector<int> sizes(static_cast<size_t>(a), 0);
  for (int i = 0; i < n; ++i) ++sizes[rng.categorical(theta.entries())];
  // Packet i holds deck[offset[i] .. offset[i]+sizes[i]); cards drop from
  // the bottom of a packet, and earlier drops end up lower in the result.
  std::vector<int> offset(static_cast<size_t>(a), 0);
  for (int i = 1; i < a; ++i) offset[i] = offset[i - 1] + sizes[i - 1];
  std::vector<int> remaining = sizes;
  std::vector<int> result(deck.size());
  for (int filled = n; filled > 0; --filled) {
    const double u = rng.uniform01() * filled;
    double acc = 0.0;
    int pick = -1;
    for (int i = 0; i < a; ++i) {
      if (remaining[i] == 0) continue;
      acc += remaining[i];
      if (u < acc) {
        pick = i;
        break;
      }
      pick = i;  // guard against accumulated float error on the last pile
    }
    result[filled - 1] = deck[offset[pick] + remaining[pick] - 1];
    --remaining[pick];
  }
  deck.swap(result);
}

Permutation forward_sample(int n, const BiasVector<double>& theta, RngStream& rng, int k) {
  std::vector<int> deck(static_cast<size_t>(n));
  std::iota(deck.begin(), deck.end(), 1);
  for (int i = 0; i < k; ++i) forward_shuffle(deck, theta, rng);
  return Permutation(std::move(deck));
}

void inverse_shuffle(std::vector<int>& deck, const BiasVector<double>& theta, RngStream& rng) {
  const int a = theta.piles();
  std::vector<std::vector<int>> buckets(static_cast<size_t>(a));
  for (int card : deck) buckets[rng.categorical(theta.entries())].push_back(card);
  deck.clear();
  for (const auto& b : buckets) deck.insert(deck.end(), b.begin(), b.end());
}

Permutation inverse_sample(int n, const BiasVector<double>& theta, RngStream& rng, int k) {
  std::vector<int> deck(static_cast<size_t>(n));
  std::iota(deck.begin(), deck.end(), 1);
  for (int i = 0; i < k; ++i) inverse_shuffle(deck, theta, rng);
  return Permutation(std::move(deck));
}

SSTSample sst_sample(int n, const BiasVector<double>& theta, RngStream& rng, int k_max) {
  if (n < 1) throw std::invalid_argument("sst_sample: needs n >= 1");
  if (k_max < 1) throw std::invalid_argument("sst_sample: needs k_max >= 1");
  SSTSample out;
  if (n == 1) {
    out.stopping_time = 1;
    out.final_deck = Permutation::identity(1);
    return out;
  }
  std::vector<int> deck(static_cast<size_t>(n));
  std::iota(deck.begin(), deck.end(), 1);
  // group[c]: equivalence class of card c+1 under "same digit prefix".
  std::vector<int> group(static_cast<size_t>(n), 0);
  std::vector<int> digit(static_cast<size_t>(n), 0);
  int groups = 1;
  const int a = theta.piles();
  std::vector<int> remap;
  for (int t = 1; t <= k_max; ++t) {
    for (int c = 0; c < n; ++c) digit[c] = rng.categorical(theta.entries());
    // Refine prefix classes by the new digit.
    remap.assign(static_cast<size_t>(groups) * a, -1);
    int next_id = 0;
    for (int c = 0; c < n; ++c) {
      int key = group[c] * a + digit[c];
      if (remap[key] < 0) remap[key] = next_id++;
      group[c] = remap[key];
    }
    groups = next_id;
    // Stable bucket the deck by the digit of the card at each position.
    std::vector<std::vector<int>> buckets(static_cast<size_t>(a));
    for (int card : deck) buckets[digit[card - 1]].push_back(card);
    deck.clear();
    for (const auto& b : buckets) deck.insert(deck.end(), b.begin(), b.end());
    if (groups == n) {
      out.stopping_time = t;
      out.final_deck = Permutation(std::move(deck));
      return out;
    }
  }
  out.stopping_time = k_max;
  out.censored = true;
  out.final_deck = Permutation(std::move(deck));
  return out;
}

BiasVector<double> to_double(const BiasVector<Rational>& theta) {
  std::vector<double> w;
  w.reserve(static_cast<size_t>(theta.piles()));
  double sum = 0.0;
  for (const Rational& v : theta.entries()) {
    w.push_back(to_double(v));
    sum += w.back();
  }
  // Exact entries convert to doubles that may miss 1 by an ulp; renormalize.
  for (double& v : w) v /= sum;
  return BiasVector<double>(std::move(w));
}

}  // namespace riffle
