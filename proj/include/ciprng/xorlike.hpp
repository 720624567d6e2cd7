#pragma once

// Marsaglia shift-xor generators ("Xorshift RNGs", J. Stat. Soft. 8(14), 2003).
//
// Constants and default seeds, transcribed from that reference:
//   xorshift32 : z ^= z<<13; z ^= z>>17; z ^= z<<5           (period 2^32-1)
//   xorshift64 : x ^= x<<13; x ^= x>>7;  x ^= x<<17          seed 88172645463325252
//   xor128     : t = x^(x<<11); x=y; y=z; z=w;
//                w = (w^(w>>19)) ^ (t^(t>>8))
//                seeds x=123456789 y=362436069 z=521288629 w=88675123
//   xorwow     : t = x^(x>>2); x=y; y=z; z=w; w=v;
//                v = (v^(v<<4)) ^ (t^(t<<1)); return (d += 362437) + v
//                seeds as xor128 plus v=5783321, d=6615241
//
// xor128 and xorwow are templated on the register word. The sequential
// chaotic-iterations generator runs them on 64-bit words; the shared-memory
// kernel uses the 32-bit xor128.

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>

#include "ciprng/errors.hpp"

namespace ciprng {

/// One shift-xor round z ^= z<<a; z ^= z>>b; z ^= z<<c on an arbitrary word width.
template <std::unsigned_integral Word>
constexpr Word xorshift_step(Word z, unsigned a, unsigned b, unsigned c) noexcept {
  z = static_cast<Word>(z ^ static_cast<Word>(z << a));
  z = static_cast<Word>(z ^ static_cast<Word>(z >> b));
  z = static_cast<Word>(z ^ static_cast<Word>(z << c));
  return z;
}

class XorShift32 {
 public:
  using result_type = std::uint32_t;

  explicit XorShift32(std::uint32_t seed) : z_(seed) {
    if (seed == 0) throw DomainError("xorshift32: zero seed is a fixed point");
  }

  std::uint32_t next() noexcept {
    z_ = xorshift_step<std::uint32_t>(z_, 13, 17, 5);
    return z_;
  }
  std::uint32_t operator()() noexcept { return next(); }

  [[nodiscard]] std::uint32_t state() const noexcept { return z_; }

  friend bool operator==(const XorShift32&, const XorShift32&) = default;

 private:
  std::uint32_t z_;
};

class XorShift64 {
 public:
  using result_type = std::uint64_t;
  static constexpr std::uint64_t kDefaultSeed = 88172645463325252ULL;

  XorShift64() noexcept : x_(kDefaultSeed) {}
  explicit XorShift64(std::uint64_t seed) : x_(seed) {
    if (seed == 0) throw DomainError("xorshift64: zero seed is a fixed point");
  }

  std::uint64_t next() noexcept {
    x_ = xorshift_step<std::uint64_t>(x_, 13, 7, 17);
    return x_;
  }
  std::uint64_t operator()() noexcept { return next(); }

  [[nodiscard]] std::uint64_t state() const noexcept { return x_; }

  friend bool operator==(const XorShift64&, const XorShift64&) = default;

 private:
  std::uint64_t x_;
};

template <std::unsigned_integral Word>
class Xor128 {
 public:
  using result_type = Word;
  using State = std::array<Word, 4>;

  Xor128() noexcept : s_{123456789u, 362436069u, 521288629u, 88675123u} {}
  explicit Xor128(const State& s) : s_(s) {
    if ((s[0] | s[1] | s[2] | s[3]) == 0) throw DomainError("xor128: all-zero state");
  }

  Word next() noexcept {
    auto& [x, y, z, w] = s_;
    const Word t = static_cast<Word>(x ^ static_cast<Word>(x << 11));
    x = y;
    y = z;
    z = w;
    w = static_cast<Word>((w ^ (w >> 19)) ^ (t ^ (t >> 8)));
    return w;
  }
  Word operator()() noexcept { return next(); }

  [[nodiscard]] const State& state() const noexcept { return s_; }

  friend bool operator==(const Xor128&, const Xor128&) = default;

 private:
  State s_;
};

template <std::unsigned_integral Word>
class XorWow {
 public:
  using result_type = Word;
  /// Five shift registers (x, y, z, w, v).
  using Registers = std::array<Word, 5>;

  XorWow() noexcept : r_{123456789u, 362436069u, 521288629u, 88675123u, 5783321u}, d_(6615241u) {}
  XorWow(const Registers& r, Word counter) : r_(r), d_(counter) {
    if ((r[0] | r[1] | r[2] | r[3] | r[4]) == 0) throw DomainError("xorwow: all-zero shift registers");
  }

  Word next() noexcept {
    auto& [x, y, z, w, v] = r_;
    const Word t = static_cast<Word>(x ^ (x >> 2));
    x = y;
    y = z;
    z = w;
    w = v;
    v = static_cast<Word>((v ^ static_cast<Word>(v << 4)) ^ (t ^ static_cast<Word>(t << 1)));
    d_ = static_cast<Word>(d_ + 362437u);
    return static_cast<Word>(d_ + v);
  }
  Word operator()() noexcept { return next(); }

  [[nodiscard]] const Registers& registers() const noexcept { return r_; }
  [[nodiscard]] Word counter() const noexcept { return d_; }

  friend bool operator==(const XorWow&, const XorWow&) = default;

 private:
  Registers r_;
  Word d_;
};

using Xor128x64 = Xor128<std::uint64_t>;
using Xor128x32 = Xor128<std::uint32_t>;
using XorWowx64 = XorWow<std::uint64_t>;

namespace detail {

/// Rejection step shared by uniform_range and its reduced-width analogs.
/// `draw` is taken as uniform on [0, 2^width); returns a value in [1, k] or
/// nothing when the draw falls in the rejection region. Requires width < 64
/// and 1 <= k <= 2^width.
constexpr std::optional<std::uint64_t> accept_in_range(std::uint64_t draw, std::uint64_t k,
                                                       unsigned width) noexcept {
  const std::uint64_t range = std::uint64_t{1} << width;
  const std::uint64_t limit = range - range % k;
  if (draw < limit) return draw % k + 1;
  return std::nullopt;
}

}  // namespace detail

/// Unbiased integer in [1, k] drawn from `rng` by rejection sampling.
/// k may be as large as 2^32, in which case no draw is ever rejected.
std::uint64_t uniform_range(XorShift32& rng, std::uint64_t k);

}  // namespace ciprng
