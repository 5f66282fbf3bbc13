#pragma once

#include <cstdint>
#include <span>

namespace riffle {

// xoshiro256** with state derived from (master seed, stream index) via
// SplitMix64. Streams for distinct indices are independent for practical
// purposes, and every draw is fully determined by (seed, index), which is
// what makes reported numbers reproducible across thread counts.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next();

  // Uniform on [0,1) with 53 random bits.
  double uniform01();

  // Index into a probability vector: smallest i with u < cumulative(i).
  int categorical(std::span<const double> probs);

 private:
  std::uint64_t state_[4];
};

}  // namespace riffle
