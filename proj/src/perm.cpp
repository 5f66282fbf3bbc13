#include "riffle/perm.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "riffle/errors.hpp"

namespace riffle {

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
  const int n = static_cast<int>(word_.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : word_) {
    if (v < 1 || v > n || seen[v - 1]) {
      throw std::invalid_argument("Permutation: word is not a bijection on {1..n}");
    }
    seen[v - 1] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> w(static_cast<size_t>(n));
  std::iota(w.begin(), w.end(), 1);
  return Permutation(std::move(w), unchecked_tag{});
}

Permutation Permutation::reversal(int n) {
  std::vector<int> w(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) w[i] = n - i;
  return Permutation(std::move(w), unchecked_tag{});
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(word_.size());
  for (int i = 0; i < size(); ++i) inv[word_[i] - 1] = i + 1;
  return Permutation(std::move(inv), unchecked_tag{});
}

Permutation compose(const Permutation& f, const Permutation& g) {
  if (f.size() != g.size()) throw std::invalid_argument("compose: size mismatch");
  std::vector<int> w(f.word_.size());
  for (int i = 0; i < f.size(); ++i) w[i] = f.word_[g.word_[i] - 1];
  return Permutation(std::move(w), Permutation::unchecked_tag{});
}

DescentSubset descent_set(const Permutation& w) {
  std::vector<int> elems;
  for (int i = 1; i < w.size(); ++i) {
    if (w.label_at(i) > w.label_at(i + 1)) elems.push_back(i);
  }
  return DescentSubset(w.size(), std::move(elems));
}

DescentSubset ides(const Permutation& w) { return descent_set(w.inverse()); }

CycleType cycle_type(const Permutation& w) {
  const int n = w.size();
  std::vector<bool> seen(static_cast<size_t>(n), false);
  std::vector<int> lengths;
  for (int start = 1; start <= n; ++start) {
    if (seen[start - 1]) continue;
    int len = 0;
    int cur = start;
    while (!seen[cur - 1]) {
      seen[cur - 1] = true;
      cur = w.label_at(cur);
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  CycleType ct;
  ct.lambda = Partition(std::move(lengths));
  ct.counts = ct.lambda.multiplicities(n);
  return ct;
}

int sign(const Permutation& w) {
  const CycleType ct = cycle_type(w);
  return ((w.size() - ct.lambda.length()) % 2 == 0) ? 1 : -1;
}

std::vector<int> LyndonFactorization::lengths() const {
  std::vector<int> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(static_cast<int>(f.size()));
  return out;
}

LyndonFactorization lyndon_factorization(std::span<const int> word) {
  const int n = static_cast<int>(word.size());
  if (n == 0) throw std::invalid_argument("lyndon_factorization: empty word");
  LyndonFactorization out;
  int i = 0;
  while (i < n) {
    int j = i + 1;
    int k = i;
    while (j < n && word[k] <= word[j]) {
      k = (word[k] < word[j]) ? i : k + 1;
      ++j;
    }
    const int len = j - k;
    while (i <= k) {
      out.factors.emplace_back(word.begin() + i, word.begin() + i + len);
      i += len;
    }
  }
  return out;
}

void for_each_permutation(int n, const std::function<void(const Permutation&)>& visit,
                          int cap) {
  if (n < 1) throw std::invalid_argument("for_each_permutation: needs n >= 1");
  if (n > cap) {
    throw capacity_error("for_each_permutation: n = " + std::to_string(n) +
                         " exceeds the enumeration cap " + std::to_string(cap));
  }
  Permutation perm = Permutation::identity(n);
  do {
    visit(perm);
  } while (std::next_permutation(perm.word_.begin(), perm.word_.end()));
}

std::vector<Permutation> all_permutations(int n, int cap) {
  std::vector<Permutation> out;
  out.reserve(static_cast<size_t>(factorial_u64(n)));
  for_each_permutation(n, [&](const Permutation& w) { out.push_back(w); }, cap);
  return out;
}

std::uint64_t factorial_u64(int n) {
  if (n < 0 || n > 20) throw std::invalid_argument("factorial_u64: needs 0 <= n <= 20");
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::uint64_t lex_rank(const Permutation& w) {
  const int n = w.size();
  std::uint64_t rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller_right = 0;
    for (int j = i + 1; j < n; ++j) {
      if (w.word()[j] < w.word()[i]) ++smaller_right;
    }
    rank += static_cast<std::uint64_t>(smaller_right) * factorial_u64(n - 1 - i);
  }
  return rank;
}

}  // namespace riffle
