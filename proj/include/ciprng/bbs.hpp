#pragma once

// Blum Blum Shub with 16-bit moduli and the eight-generator GPU kernel built
// on it: 8 nibbles per word, two variable shifts with fillers, two of sixteen
// combination arrays chosen per thread, and slot rotation at kernel exit.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ciprng/seed_expander.hpp"

namespace ciprng {

struct BbsModulus {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint32_t m = 0;
};

/// Validates p != q, both prime and ≡ 3 (mod 4), with pq < 2^16.
BbsModulus bbs_modulus(std::uint32_t p, std::uint32_t q);

/// Primes in [131, 251] congruent to 3 mod 4; every pair multiplies below 2^16.
std::span<const std::uint32_t> bbs_prime_pool() noexcept;

/// Distinct p, q drawn uniformly from bbs_prime_pool().
BbsModulus bbs_keygen(SeedExpander& rng);

class BbsState {
 public:
  /// Rejects moduli that are not a valid product (see bbs_modulus) and seeds
  /// x outside (1, M-1), sharing a factor with M, or squaring to 1.
  BbsState(std::uint32_t x, std::uint32_t modulus);

  /// x <- x^2 mod M; returns the 4 low bits of the new x.
  std::uint32_t next4() noexcept {
    x_ = (x_ * x_) % m_;  // x < 2^16, so the square fits in 32 bits
    return x_ & 15u;
  }

  [[nodiscard]] std::uint32_t x() const noexcept { return x_; }
  [[nodiscard]] std::uint32_t modulus() const noexcept { return m_; }

  friend bool operator==(const BbsState&, const BbsState&) = default;

 private:
  std::uint32_t x_;
  std::uint32_t m_;
};

/// Random valid seed for modulus m.
BbsState seed_bbs_state(std::uint32_t m, SeedExpander& rng);

struct BbsThreadState {
  std::array<BbsState, 8> bbs;
  std::uint32_t x = 0;
};

/// Shift-filler masks indexed by the shift amount.
inline constexpr std::array<std::uint32_t, 4> kArrayShift{0, 1, 3, 7};

struct BbsGridConfig {
  std::size_t threads = 1;
  std::size_t combination_size = 1;
  /// Arrays 0-7 are selected by bbs1, arrays 8-15 by bbs2.
  std::array<std::vector<std::uint32_t>, 16> comb;
  std::size_t block_size = 0;

  BbsGridConfig();
  void validate() const;
  [[nodiscard]] std::size_t partner(std::size_t j, std::span<const std::uint32_t> array) const;
};

/// Build t from the thread's generators: eight (t <<= 4; t |= nibble) rounds
/// over bbs1..bbs8, then two variable shifts by (bbs3 & 3) and (bbs7 & 3)
/// with fillers from bbs1 and bbs2. Word arithmetic truncates to 32 bits.
std::uint32_t bbs_compose_strategy(BbsThreadState& ts) noexcept;

/// Shared-array partners (o1, o2) of thread j, from the current bbs1/bbs2 x.
std::array<std::size_t, 2> bbs_select_partners(const BbsThreadState& ts, const BbsGridConfig& config,
                                               std::size_t j);

struct BbsStep {
  std::uint32_t t = 0;  ///< strategy after the shared-cell XORs; becomes the thread's shared cell
  std::uint32_t x = 0;  ///< new output, x ^ t
};

/// One kernel iteration for one thread.
BbsStep bbs_kernel_next(BbsThreadState& ts, std::span<const std::uint32_t> shmem_prev, std::size_t o1,
                        std::size_t o2) noexcept;

/// Persisted slot assignment after a kernel call: bbs1 -> slot 2, ..., bbs8 -> slot 1.
void rotate_states(BbsThreadState& ts) noexcept;

struct BbsGrid {
  BbsGridConfig config;
  std::vector<BbsThreadState> threads;
  std::vector<std::uint32_t> shared;
};

/// Every thread gets eight generators with independently drawn moduli.
BbsGrid seed_bbs_grid(std::uint64_t master_seed, BbsGridConfig config);

/// One kernel call of n lockstep rounds; output word i of thread t at n·t + i.
/// Partners are fixed before the round loop and states rotate at exit.
std::vector<std::uint32_t> bbs_grid_run(BbsGrid& grid, std::size_t n, unsigned workers = 1);

}  // namespace ciprng
