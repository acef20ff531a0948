// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>

namespace xmd {

/// Counter-based generator (Widynski "squares" with a 64-bit output).
/// Each (seed, stream) pair gives an independent, reproducible sequence, so
/// parallel work that owns one stream per task is bitwise deterministic.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return squares64(counter_++, key_); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  /// Derived generator for a nested task.
  CounterRng substream(std::uint64_t index) const;

  static std::uint64_t squares64(std::uint64_t ctr, std::uint64_t key);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace xmd
