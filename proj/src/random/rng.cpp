// SPDX-License-Identifier: Apache-2.0
#include "xmd/random/rng.hpp"

namespace xmd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::squares64(std::uint64_t ctr, std::uint64_t key) {
  std::uint64_t t, x, y, z;
  y = x = ctr * key;
  z = y + key;
  x = x * x + y;
  x = (x >> 32) | (x << 32);
  x = x * x + z;
  x = (x >> 32) | (x << 32);
  x = x * x + y;
  x = (x >> 32) | (x << 32);
  t = x = x * x + z;
  x = (x >> 32) | (x << 32);
  return t ^ ((x * x + y) >> 32);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {
  std::uint64_t k = splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
  // Keys need an odd value and a dense bit pattern.
  key_ = splitmix64(k) | 1ULL;
}

double CounterRng::uniform() {
  // (m + 0.5) / 2^53 lies strictly inside (0, 1).
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

CounterRng CounterRng::substream(std::uint64_t index) const {
  return CounterRng(splitmix64(seed_ ^ splitmix64(stream_)), index);
}

}  // namespace xmd
