#pragma once

#include <cstdint>

namespace ciprng {

/// Expands one 64-bit master seed into a stream of parameter words.
///
/// The counter advances by the golden-ratio increment and each output goes
/// through the splitmix64 finalizer (xor-shift 30, multiply, xor-shift 27,
/// multiply, xor-shift 31), which has full avalanche: flipping any seed bit
/// changes every output bit with probability ~1/2.
class SeedExpander {
 public:
  explicit SeedExpander(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() noexcept { return mix(state_ += 0x9e3779b97f4a7c15ULL); }
  std::uint32_t next32() noexcept { return static_cast<std::uint32_t>(next() >> 32); }

  std::uint64_t next_nonzero() noexcept {
    for (;;) {
      if (const std::uint64_t v = next(); v != 0) return v;
    }
  }

  /// Unbiased draw in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = -bound % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t v = next();
      if (v >= limit) return v % bound;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace ciprng
