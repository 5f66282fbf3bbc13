#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "riffle/errors.hpp"
#include "riffle/perm.hpp"

using namespace riffle;

namespace {
Permutation perm(std::vector<int> w) { return Permutation(std::move(w)); }
}  // namespace

TEST_CASE("descent sets") {
  CHECK(descent_set(perm({2, 3, 1})).elements == std::vector<int>{2});
  CHECK(descent_set(Permutation::identity(6)).elements.empty());
  CHECK(descent_set(Permutation::reversal(5)).elements == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("inverse descent sets") {
  CHECK(perm({2, 3, 1}).inverse() == perm({3, 1, 2}));
  CHECK(ides(perm({2, 3, 1})).elements == std::vector<int>{1});
  CHECK(ides(Permutation::identity(4)).elements.empty());
  CHECK(ides(Permutation::reversal(4)).elements == std::vector<int>{1, 2, 3});
}

TEST_CASE("ides equals label-position descents") {
  // i lies in iDes(w) exactly when label i sits below label i+1 in the deck.
  for (int n = 1; n <= 7; ++n) {
    for_each_permutation(n, [&](const Permutation& w) {
      std::vector<int> pos(static_cast<size_t>(n) + 1, 0);
      for (int i = 1; i <= n; ++i) pos[w.label_at(i)] = i;
      std::vector<int> expected;
      for (int i = 1; i < n; ++i) {
        if (pos[i] > pos[i + 1]) expected.push_back(i);
      }
      CHECK(ides(w).elements == expected);
    });
  }
}

TEST_CASE("cycle types and sign") {
  CHECK(cycle_type(perm({2, 3, 1})).lambda.parts == std::vector<int>{3});
  CHECK(cycle_type(Permutation::identity(4)).lambda.parts == std::vector<int>{1, 1, 1, 1});
  CHECK(cycle_type(perm({2, 1, 4, 3})).lambda.parts == std::vector<int>{2, 2});
  CHECK(sign(Permutation::identity(5)) == 1);
  CHECK(sign(perm({2, 1, 3})) == -1);
  CHECK(sign(perm({2, 3, 1})) == 1);
}

namespace {

// Allocation-free sign of word, and of f.g, for the exhaustive pair scan.
int raw_sign(const std::vector<int>& w) {
  std::vector<bool> seen(w.size(), false);
  int cycles = 0;
  for (size_t s = 0; s < w.size(); ++s) {
    if (seen[s]) continue;
    ++cycles;
    for (size_t c = s; !seen[c]; c = static_cast<size_t>(w[c] - 1)) seen[c] = true;
  }
  return ((w.size() - cycles) % 2 == 0) ? 1 : -1;
}

}  // namespace

TEST_CASE("sign is multiplicative") {
  for (int n = 2; n <= 6; ++n) {
    const auto perms = all_permutations(n);
    std::vector<int> signs;
    signs.reserve(perms.size());
    for (const auto& w : perms) signs.push_back(sign(w));
    std::vector<int> product(static_cast<size_t>(n));
    long long mismatches = 0;
    for (size_t i = 0; i < perms.size(); ++i) {
      for (size_t j = 0; j < perms.size(); ++j) {
        const auto& f = perms[i].word();
        const auto& g = perms[j].word();
        for (int p = 0; p < n; ++p) product[p] = f[g[p] - 1];
        mismatches += raw_sign(product) != signs[i] * signs[j];
      }
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("group identities") {
  for (int n = 1; n <= 6; ++n) {
    for_each_permutation(n, [&](const Permutation& w) {
      CHECK(w.inverse().inverse() == w);
      CHECK(compose(w, w.inverse()) == Permutation::identity(n));
    });
  }
}

TEST_CASE("lyndon factorization basics") {
  const std::vector<int> word = {2, 3, 6, 4, 1, 5};
  const auto fact = lyndon_factorization(word);
  CHECK(fact.factors == std::vector<std::vector<int>>{{2, 3, 6, 4}, {1, 5}});

  const auto rev = lyndon_factorization(Permutation::reversal(6).word());
  CHECK(rev.lengths() == std::vector<int>{1, 1, 1, 1, 1, 1});

  const auto id = lyndon_factorization(Permutation::identity(6).word());
  CHECK(id.lengths() == std::vector<int>{6});

  CHECK_THROWS_AS(lyndon_factorization(std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("lyndon factorization invariants by rotation brute force") {
  for (int n = 1; n <= 6; ++n) {
    for_each_permutation(n, [&](const Permutation& w) {
      const auto fact = lyndon_factorization(w.word());
      std::vector<int> concat;
      for (const auto& f : fact.factors) {
        CHECK(oracles::is_lyndon_by_rotations(f));
        concat.insert(concat.end(), f.begin(), f.end());
      }
      CHECK(concat == w.word());
      for (size_t i = 0; i + 1 < fact.factors.size(); ++i) {
        CHECK(!std::lexicographical_compare(fact.factors[i].begin(), fact.factors[i].end(),
                                            fact.factors[i + 1].begin(),
                                            fact.factors[i + 1].end()));
      }
    });
  }
}

TEST_CASE("lyndon length types are distributed like cycle types") {
  for (int n = 1; n <= 7; ++n) {
    std::map<std::vector<int>, long long> by_type;
    for_each_permutation(n, [&](const Permutation& w) {
      auto lengths = lyndon_factorization(w.word()).lengths();
      std::sort(lengths.begin(), lengths.end(), std::greater<>());
      ++by_type[lengths];
    });
    const Int nfact = factorial(n);
    for (const auto& [type, count] : by_type) {
      CHECK(Int(count) == nfact / z_of(Partition(std::vector<int>(type))));
    }
    long long total = 0;
    for (const auto& [type, count] : by_type) total += count;
    CHECK(total == static_cast<long long>(factorial_u64(n)));
  }
}

TEST_CASE("enumeration") {
  std::vector<Permutation> singleton;
  for_each_permutation(1, [&](const Permutation& w) { singleton.push_back(w); });
  CHECK(singleton == std::vector<Permutation>{Permutation::identity(1)});

  std::set<std::vector<int>> seen;
  std::uint64_t rank = 0;
  for_each_permutation(4, [&](const Permutation& w) {
    seen.insert(w.word());
    CHECK(lex_rank(w) == rank);
    ++rank;
  });
  CHECK(seen.size() == 24);
  CHECK_THROWS_AS(for_each_permutation(7, [](const Permutation&) {}, 6), capacity_error);
}

TEST_CASE("permutation word validation") {
  CHECK_THROWS_AS(perm({1, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(perm({0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(perm({2, 3}), std::invalid_argument);
}
