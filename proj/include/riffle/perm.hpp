#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "riffle/qsym.hpp"

namespace riffle {

// A permutation of {1..n} in one-line notation: word()[i] is the label at
// position i+1, positions read top to bottom of the deck.
class Permutation {
 public:
  Permutation() = default;
  // Validates that word is a bijection on {1..n}.
  explicit Permutation(std::vector<int> word);

  static Permutation identity(int n);
  static Permutation reversal(int n);

  int size() const { return static_cast<int>(word_.size()); }
  const std::vector<int>& word() const { return word_; }
  // Label at 1-based position.
  int label_at(int pos) const { return word_[pos - 1]; }

  Permutation inverse() const;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

 private:
  struct unchecked_tag {};
  Permutation(std::vector<int> word, unchecked_tag) : word_(std::move(word)) {}

  friend void for_each_permutation(int, const std::function<void(const Permutation&)>&, int);
  friend Permutation compose(const Permutation&, const Permutation&);

  std::vector<int> word_;
};

// (f . g)(i) = f[g[i]].
Permutation compose(const Permutation& f, const Permutation& g);

// Positions i with word[i] > word[i+1].
DescentSubset descent_set(const Permutation& w);

// Descent set of the inverse.
DescentSubset ides(const Permutation& w);

struct CycleType {
  Partition lambda;
  std::vector<int> counts;  // counts[i-1] = number of i-cycles
};

CycleType cycle_type(const Permutation& w);

// (-1)^{n - number of cycles}.
int sign(const Permutation& w);

struct LyndonFactorization {
  std::vector<std::vector<int>> factors;

  std::vector<int> lengths() const;
};

// Unique factorization into weakly decreasing Lyndon factors (each factor
// lexicographically least among its rotations). Duval's algorithm.
// Throws std::invalid_argument on the empty word.
LyndonFactorization lyndon_factorization(std::span<const int> word);

inline constexpr int kDefaultEnumCap = 10;

// Visits all n! permutations in lexicographic order. The Permutation
// reference is reused storage. Throws capacity_error when n exceeds cap.
void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit,
                          int cap = kDefaultEnumCap);

std::vector<Permutation> all_permutations(int n, int cap = kDefaultEnumCap);

// Rank within lexicographic enumeration order; n <= 20.
std::uint64_t lex_rank(const Permutation& w);

std::uint64_t factorial_u64(int n);

}  // namespace riffle
