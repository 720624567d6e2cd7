#pragma once

// Chaotic iterations on Boolean networks and the generators built on them.
//
// Coordinate convention used throughout: cell i in [1, n] is bit i-1 of a
// StateWord, and a subset of cells is the mask with those bits set.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ciprng/xorlike.hpp"

namespace ciprng {

using StateWord = std::uint64_t;
using SubsetMask = std::uint64_t;
/// Finite prefix of a strategy; term k is the subset S^k as a mask.
using SubsetStrategy = std::vector<SubsetMask>;

constexpr StateWord low_mask(unsigned n) noexcept {
  return n >= 64 ? ~StateWord{0} : (StateWord{1} << n) - 1;
}

/// Explicit truth table of f : B^n -> B^n, table[x] = f(x).
class BooleanFunction {
 public:
  static constexpr unsigned kMaxDim = 20;

  BooleanFunction(unsigned n, std::vector<StateWord> table);

  static BooleanFunction identity(unsigned n);
  static BooleanFunction negation(unsigned n);
  static BooleanFunction constant(unsigned n, StateWord value);

  [[nodiscard]] unsigned dim() const noexcept { return n_; }
  [[nodiscard]] std::size_t size() const noexcept { return table_.size(); }
  [[nodiscard]] StateWord mask() const noexcept { return low_mask(n_); }
  [[nodiscard]] std::span<const StateWord> table() const noexcept { return table_; }
  [[nodiscard]] StateWord operator()(StateWord x) const { return table_.at(x); }

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

 private:
  unsigned n_;
  std::vector<StateWord> table_;
};

/// F_f(i, x): cell i takes its value under f, every other cell is kept.
StateWord apply_single(const BooleanFunction& f, unsigned i, StateWord x);

/// Set-based F_f(P, x): cells in P take their value under f.
StateWord apply_subset(const BooleanFunction& f, SubsetMask p, StateWord x);

/// One general chaotic iteration of the vectorial negation, x XOR s.
constexpr StateWord xor_ci_step(StateWord x, SubsetMask s) noexcept { return x ^ s; }

/// Trajectory x^0, x^1, ..., x^K under the subset strategy (K = strategy length).
std::vector<StateWord> iterate(const BooleanFunction& f, StateWord x0, std::span<const SubsetMask> strategy);

struct Algorithm1Result {
  StateWord state;
  std::uint64_t updates;  ///< number of single-cell iterations performed
};

/// Chaotic-functions PRNG step. Draws k = b + U[1,b] from `length_rng`, then
/// runs the loop i = 0..k (k+1 updates, so between b+2 and 2b+1) with cells
/// drawn uniformly from [1, n] by `strategy_rng`.
Algorithm1Result algorithm1_next(const BooleanFunction& f, std::uint64_t b, StateWord x0,
                                 XorShift32& strategy_rng, XorShift32& length_rng);

/// Sequential generator mixing xorshift64, xor128 and xorwow outputs into a
/// 32-bit state by six XORs.
class CiSequential {
 public:
  using result_type = std::uint32_t;
  static constexpr std::uint32_t kDefaultX = 123123123;

  CiSequential() = default;
  CiSequential(std::uint32_t x, XorShift64 xs, Xor128x64 x128, XorWowx64 wow) noexcept
      : x_(x), xorshift_(xs), xor128_(x128), xorwow_(wow) {}

  std::uint32_t next() noexcept {
    const std::uint64_t t1 = xorshift_.next();
    const std::uint64_t t2 = xor128_.next();
    const std::uint64_t t3 = xorwow_.next();
    x_ ^= static_cast<std::uint32_t>(t1);
    x_ ^= static_cast<std::uint32_t>(t2 >> 32);
    x_ ^= static_cast<std::uint32_t>(t3 >> 32);
    x_ ^= static_cast<std::uint32_t>(t2);
    x_ ^= static_cast<std::uint32_t>(t1 >> 32);
    x_ ^= static_cast<std::uint32_t>(t3);
    return x_;
  }
  std::uint32_t operator()() noexcept { return next(); }

  [[nodiscard]] std::uint32_t x() const noexcept { return x_; }
  [[nodiscard]] const XorShift64& xorshift() const noexcept { return xorshift_; }
  [[nodiscard]] const Xor128x64& xor128() const noexcept { return xor128_; }
  [[nodiscard]] const XorWowx64& xorwow() const noexcept { return xorwow_; }

  friend bool operator==(const CiSequential&, const CiSequential&) = default;

 private:
  std::uint32_t x_ = kDefaultX;
  XorShift64 xorshift_;
  Xor128x64 xor128_;
  XorWowx64 xorwow_;
};

/// Text format: first line n, then 2^n lines of hexadecimal f(x) in ascending x.
BooleanFunction read_boolean_function(std::istream& in);
void write_boolean_function(std::ostream& out, const BooleanFunction& f);

}  // namespace ciprng
