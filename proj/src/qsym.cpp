#include "riffle/qsym.hpp"

#include <cctype>
#include <numeric>

#include "riffle/errors.hpp"

namespace riffle {

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
  for (int v : parts) {
    if (v < 1) throw std::invalid_argument("Composition: parts must be >= 1");
  }
}

int Composition::total() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

DescentSubset::DescentSubset(int ambient_n, std::vector<int> elems)
    : n(ambient_n), elements(std::move(elems)) {
  if (n < 0) throw std::invalid_argument("DescentSubset: negative ambient n");
  int prev = 0;
  for (int e : elements) {
    if (e <= prev || e >= n) {
      throw std::invalid_argument(
          "DescentSubset: elements must be strictly increasing within 1..n-1");
    }
    prev = e;
  }
}

bool DescentSubset::contains_all(const DescentSubset& other) const {
  return std::includes(elements.begin(), elements.end(),
                       other.elements.begin(), other.elements.end());
}

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  int prev = std::numeric_limits<int>::max();
  for (int v : parts) {
    if (v < 1 || v > prev) {
      throw std::invalid_argument("Partition: parts must be weakly decreasing and >= 1");
    }
    prev = v;
  }
}

int Partition::n() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::vector<int> Partition::multiplicities(int upto) const {
  std::vector<int> counts(static_cast<size_t>(upto), 0);
  for (int p : parts) {
    if (p <= upto) ++counts[p - 1];
  }
  return counts;
}

DescentSubset composition_to_subset(const Composition& alpha) {
  std::vector<int> elems;
  elems.reserve(alpha.parts.size());
  int run = 0;
  for (size_t i = 0; i + 1 < alpha.parts.size(); ++i) {
    run += alpha.parts[i];
    elems.push_back(run);
  }
  return DescentSubset(alpha.total(), std::move(elems));
}

Composition subset_to_composition(const DescentSubset& d) {
  if (d.n < 1) throw std::invalid_argument("subset_to_composition: needs n >= 1");
  std::vector<int> parts;
  parts.reserve(d.elements.size() + 1);
  int prev = 0;
  for (int e : d.elements) {
    parts.push_back(e - prev);
    prev = e;
  }
  parts.push_back(d.n - prev);
  return Composition(std::move(parts));
}

bool refines(const Composition& alpha, const Composition& beta) {
  if (alpha.total() != beta.total()) {
    throw std::invalid_argument("refines: compositions of different totals");
  }
  size_t i = 0;
  for (int target : beta.parts) {
    int run = 0;
    while (run < target) {
      if (i >= alpha.parts.size()) return false;
      run += alpha.parts[i++];
    }
    if (run != target) return false;
  }
  return i == alpha.parts.size();
}

Int z_of(const Partition& lambda) {
  Int z = 1;
  size_t i = 0;
  const auto& parts = lambda.parts;
  while (i < parts.size()) {
    size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    const auto mult = static_cast<int>(j - i);
    z *= scalar_pow(Int(parts[i]), mult);
    for (int f = 2; f <= mult; ++f) z *= f;
    i = j;
  }
  return z;
}

Int factorial(int n) {
  Int f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void for_each_partition(int n, const std::function<void(std::span<const int>)>& visit) {
  if (n < 0) throw std::invalid_argument("for_each_partition: negative n");
  std::vector<int> parts;
  parts.reserve(static_cast<size_t>(n));
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      visit(std::span<const int>(parts));
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      parts.push_back(p);
      self(self, remaining - p, p);
      parts.pop_back();
    }
  };
  rec(rec, n, n);
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  for_each_partition(n, [&](std::span<const int> parts) {
    out.emplace_back(std::vector<int>(parts.begin(), parts.end()));
  });
  return out;
}

std::vector<DescentSubset> all_descent_subsets(int n) {
  if (n < 1) throw std::invalid_argument("all_descent_subsets: needs n >= 1");
  const uint32_t limit = 1u << (n - 1);
  std::vector<DescentSubset> out;
  out.reserve(limit);
  for (uint32_t mask = 0; mask < limit; ++mask) {
    std::vector<int> elems;
    for (int i = 1; i < n; ++i) {
      if (mask & (1u << (i - 1))) elems.push_back(i);
    }
    out.emplace_back(n, std::move(elems));
  }
  return out;
}

namespace {

// Base-10 integer from a digit string. Leading zeros must not reach the
// cpp_int constructor, which would read them as an octal prefix.
Int decimal_int(std::string text) {
  bool negative = false;
  if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
    negative = text[0] == '-';
    text.erase(text.begin());
  }
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("parse_rational: malformed integer: " + text);
  }
  const auto first = text.find_first_not_of('0');
  text = first == std::string::npos ? "0" : text.substr(first);
  Int v(text);
  return negative ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Int num = decimal_int(text.substr(0, slash));
    const Int den = decimal_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(decimal_int(text));
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  if (frac.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("parse_rational: malformed decimal: " + text);
  }
  return Rational(decimal_int(whole.empty() ? "0" : whole)) +
         Rational(decimal_int(frac.empty() ? "0" : frac),
                  scalar_pow(Int(10), static_cast<long long>(frac.size()))) *
             (whole.size() > 0 && whole[0] == '-' ? -1 : 1);
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace riffle
