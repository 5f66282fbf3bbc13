// Test-only reference implementations, kept deliberately naive and
// independent of the library's evaluation paths.
#pragma once

#include <numeric>
#include <span>
#include <vector>

#include "riffle/measure.hpp"
#include "riffle/perm.hpp"
#include "riffle/qsym.hpp"

namespace riffle::oracles {

// Fundamental basis via its monomial expansion: Q_D = sum of M_alpha over
// all compositions alpha whose descent subset contains D.
inline Rational fundamental_via_monomials(const DescentSubset& d,
                                          std::span<const Rational> x) {
  Rational total(0);
  for (const DescentSubset& s : all_descent_subsets(d.n)) {
    if (!s.contains_all(d)) continue;
    total += eval_monomial(subset_to_composition(s), x);
  }
  return total;
}

// True when the word is strictly least among all of its rotations.
inline bool is_lyndon_by_rotations(std::span<const int> word) {
  const int n = static_cast<int>(word.size());
  std::vector<int> rot(word.begin(), word.end());
  for (int shift = 1; shift < n; ++shift) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (!std::lexicographical_compare(word.begin(), word.end(), rot.begin(), rot.end())) {
      return false;
    }
  }
  return true;
}

// Group-algebra convolution of two full laws.
inline std::vector<Rational> convolve_laws(int n, const std::vector<Rational>& p,
                                           const std::vector<Rational>& q) {
  std::vector<Rational> out(p.size(), Rational(0));
  const auto perms = all_permutations(n);
  for (const auto& v : perms) {
    const Rational pv = p[lex_rank(v)];
    if (pv == 0) continue;
    for (const auto& u : perms) {
      out[lex_rank(compose(v, u))] += pv * q[lex_rank(u)];
    }
  }
  return out;
}

// Convolution evaluated at a single target w: sum_v p(v) q(v^{-1} w).
inline Rational convolve_at(int n, const std::vector<Rational>& p,
                            const std::vector<Rational>& q, const Permutation& w) {
  Rational total(0);
  for (const auto& v : all_permutations(n)) {
    total += p[lex_rank(v)] * q[lex_rank(compose(v.inverse(), w))];
  }
  return total;
}

// One two-pile shuffle by direct enumeration of cuts and drop sequences.
inline std::vector<Rational> brute_force_shuffle_law(int n, const Rational& theta) {
  std::vector<Rational> law(factorial_u64(n), Rational(0));
  Int binom = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) binom = binom * (n - j + 1) / j;
    const Rational cut_prob =
        Rational(binom) * scalar_pow(theta, j) * scalar_pow(Rational(Rational(1) - theta), n - j);
    std::vector<int> drops;
    auto rec = [&](auto&& self, int a, int b, const Rational& prob) -> void {
      if (a == 0 && b == 0) {
        std::vector<int> word(drops.rbegin(), drops.rend());
        law[lex_rank(Permutation(std::move(word)))] += cut_prob * prob;
        return;
      }
      if (a > 0) {
        drops.push_back(a);
        self(self, a - 1, b, prob * Rational(a, a + b));
        drops.pop_back();
      }
      if (b > 0) {
        drops.push_back(j + b);
        self(self, a, b - 1, prob * Rational(b, a + b));
        drops.pop_back();
      }
    };
    rec(rec, j, n - j, Rational(1));
  }
  return law;
}

// Law of the inverse of `folds` successive inverse shuffles, by exact
// enumeration of every digit assignment (one digit per card per fold).
// Labels sort stably with label 0 on top.
inline std::vector<Rational> inverse_shuffle_inverted_law(int n, std::span<const Rational> theta,
                                                          int folds) {
  const int a = static_cast<int>(theta.size());
  std::vector<Rational> law(factorial_u64(n), Rational(0));
  std::uint64_t assignments = 1;
  for (int i = 0; i < n * folds; ++i) assignments *= static_cast<std::uint64_t>(a);
  for (std::uint64_t code = 0; code < assignments; ++code) {
    std::uint64_t rest = code;
    Rational prob(1);
    std::vector<std::vector<int>> digit(static_cast<size_t>(folds),
                                        std::vector<int>(static_cast<size_t>(n)));
    for (int f = 0; f < folds; ++f) {
      for (int card = 0; card < n; ++card) {
        const int label = static_cast<int>(rest % a);
        rest /= a;
        digit[f][card] = label;
        prob *= theta[label];
      }
    }
    std::vector<int> deck(static_cast<size_t>(n));
    std::iota(deck.begin(), deck.end(), 1);
    for (int f = 0; f < folds; ++f) {
      std::vector<int> next;
      next.reserve(deck.size());
      for (int label = 0; label < a; ++label) {
        for (int card : deck) {
          if (digit[f][card - 1] == label) next.push_back(card);
        }
      }
      deck.swap(next);
    }
    law[lex_rank(Permutation(std::move(deck)).inverse())] += prob;
  }
  return law;
}

// n! times the z^n coefficient of exp(sum_{j<=n} x_j z^j / j), by direct
// truncated power-series exponentiation.
inline Rational egf_permanent_sum(int n, std::span<const Rational> x) {
  std::vector<Rational> a(static_cast<size_t>(n) + 1, Rational(0));
  for (int j = 1; j <= n; ++j) a[j] = x[j - 1] / Rational(j);
  std::vector<Rational> b(static_cast<size_t>(n) + 1, Rational(0));
  b[0] = 1;
  for (int m = 1; m <= n; ++m) {
    Rational acc(0);
    for (int j = 1; j <= m; ++j) acc += Rational(j) * a[j] * b[m - j];
    b[m] = acc / Rational(m);
  }
  return Rational(factorial(n)) * b[n];
}

}  // namespace riffle::oracles
