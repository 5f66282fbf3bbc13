#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "riffle/rational.hpp"

namespace riffle {

// Ordered evaluation point for (quasi)symmetric functions. Order is
// significant: quasisymmetric values change under permutation of the
// weights (e.g. Q_{1} of degree 3 at (x,y) is xy^2, at (y,x) it is yx^2).
template <class S>
using WeightVector = std::vector<S>;

// A composition of n: ordered sequence of positive parts.
struct Composition {
  std::vector<int> parts;

  Composition() = default;
  explicit Composition(std::vector<int> p);

  int total() const;
  int length() const { return static_cast<int>(parts.size()); }
  bool operator==(const Composition&) const = default;
};

// A subset of {1,...,n-1}, stored strictly increasing, together with the
// ambient n. Compositions of n and subsets of [n-1] are two encodings of
// the same object; see composition_to_subset / subset_to_composition.
struct DescentSubset {
  int n = 0;
  std::vector<int> elements;

  DescentSubset() = default;
  DescentSubset(int ambient_n, std::vector<int> elems);

  int size() const { return static_cast<int>(elements.size()); }
  bool contains(int i) const {
    return std::binary_search(elements.begin(), elements.end(), i);
  }
  // True when every element of other also lies in *this.
  bool contains_all(const DescentSubset& other) const;
  bool operator==(const DescentSubset&) const = default;
};

// A partition of n: weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int n() const;
  int length() const { return static_cast<int>(parts.size()); }
  // counts[i-1] = number of parts equal to i, for i = 1..upto.
  std::vector<int> multiplicities(int upto) const;
  bool operator==(const Partition&) const = default;
};

DescentSubset composition_to_subset(const Composition& alpha);
Composition subset_to_composition(const DescentSubset& d);

// alpha refines beta iff consecutive blocks of alpha sum to the parts of
// beta; equivalently the descent subset of alpha contains that of beta.
// Throws std::invalid_argument when totals differ.
bool refines(const Composition& alpha, const Composition& beta);

// z_lambda = prod_i i^{n_i} n_i!; n!/z_lambda counts permutations with
// cycle type lambda.
Int z_of(const Partition& lambda);

// Visits every partition of n exactly once, largest first part first,
// ending at (1,...,1). The span passed to the visitor is reused storage.
void for_each_partition(int n, const std::function<void(std::span<const int>)>& visit);

std::vector<Partition> partitions_of(int n);

// All subsets of {1,...,n-1} as DescentSubsets, in mask order.
std::vector<DescentSubset> all_descent_subsets(int n);

namespace detail {
template <class S>
S int_to_scalar(const Int& v) {
  if constexpr (std::is_same_v<S, double>) {
    return v.convert_to<double>();
  } else {
    return S(v);
  }
}
}  // namespace detail

// M_alpha(x) = sum over strictly increasing index tuples of the monomial
// with exponents alpha. Zero when x has fewer entries than alpha has parts.
template <class S>
S eval_monomial(const Composition& alpha, std::span<const S> x) {
  const int a = alpha.length();
  if (a == 0) return S(1);
  std::vector<S> f(static_cast<size_t>(a) + 1, S(0));
  f[0] = S(1);
  for (const S& xv : x) {
    for (int j = a; j >= 1; --j) {
      if (f[j - 1] != S(0)) {
        f[j] += f[j - 1] * scalar_pow(xv, alpha.parts[j - 1]);
      }
    }
  }
  return f[a];
}

// Q_D(x): sum over weakly increasing index sequences i_1 <= ... <= i_n
// with a strict increase forced after every position in D. Dynamic
// program over positions with a running prefix sum; O(n * |x|).
template <class S>
S eval_fundamental(const DescentSubset& d, std::span<const S> x) {
  const int n = d.n;
  if (n == 0) return S(1);
  const size_t m = x.size();
  if (m == 0) return S(0);
  std::vector<S> g(x.begin(), x.end());  // position 1
  for (int j = 1; j < n; ++j) {
    const bool strict = d.contains(j);
    S run(0);
    for (size_t v = 0; v < m; ++v) {
      if (strict) {
        S old = g[v];
        g[v] = x[v] * run;
        run += old;
      } else {
        run += g[v];
        g[v] = x[v] * run;
      }
    }
  }
  S total(0);
  for (const S& gv : g) total += gv;
  return total;
}

// e_n(x): sum over n-subsets of distinct variables.
template <class S>
S eval_elementary(int n, std::span<const S> x) {
  if (n < 0) throw std::invalid_argument("eval_elementary: negative degree");
  if (n == 0) return S(1);
  if (static_cast<size_t>(n) > x.size()) return S(0);
  std::vector<S> f(static_cast<size_t>(n) + 1, S(0));
  f[0] = S(1);
  for (const S& xv : x) {
    for (int j = n; j >= 1; --j) f[j] += f[j - 1] * xv;
  }
  return f[n];
}

// h_n(x): sum over n-multisets.
template <class S>
S eval_complete(int n, std::span<const S> x) {
  if (n < 0) throw std::invalid_argument("eval_complete: negative degree");
  if (n == 0) return S(1);
  std::vector<S> f(static_cast<size_t>(n) + 1, S(0));
  f[0] = S(1);
  for (const S& xv : x) {
    for (int j = 1; j <= n; ++j) f[j] += f[j - 1] * xv;
  }
  return f[n];
}

// p_n(x) = sum x_i^n; p_0 = number of variables.
template <class S>
S eval_power(int n, std::span<const S> x) {
  if (n < 0) throw std::invalid_argument("eval_power: negative degree");
  if (n == 0) return S(static_cast<int>(x.size()));
  S total(0);
  for (const S& xv : x) total += scalar_pow(xv, n);
  return total;
}

}  // namespace riffle
