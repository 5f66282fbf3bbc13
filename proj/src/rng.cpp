#include "riffle/rng.hpp"

namespace riffle {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index) {
  std::uint64_t x = master_seed ^ (stream_index * 0xD2B74407B1CE6E93ULL + 0x8BB84B93962EACC9ULL);
  for (auto& s : state_) s = splitmix64(x);
  // xoshiro must not start at the all-zero state
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RngStream::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int RngStream::categorical(std::span<const double> probs) {
  const double u = uniform01();
  double acc = 0.0;
  const int last = static_cast<int>(probs.size()) - 1;
  for (int i = 0; i < last; ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return last;
}

}  // namespace riffle
