#pragma once

// CPU simulation of the two xor-like GPU kernels. Each logical GPU thread is a
// value in a vector; OS workers only partition those values, so every result
// is a pure function of (master seed, configuration, n).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ciprng/chaotic.hpp"
#include "ciprng/seed_expander.hpp"
#include "ciprng/xorlike.hpp"

namespace ciprng {

/// Thread/combination layout of the shared-memory kernel.
///
/// Logical thread j lives in block j / block_size (a single block when
/// block_size is 0) with local index l. It reads the shared cells
/// l - l % c + comb1[l % c] and l - l % c + comb2[l % c] of its block.
struct GridConfig {
  std::size_t threads = 1;
  std::size_t combination_size = 1;
  std::vector<std::uint32_t> comb1{0};
  std::vector<std::uint32_t> comb2{0};
  std::size_t block_size = 0;
  /// Reads see writes already made in the same round, in thread order. Models
  /// an unsynchronized shared array; not part of the determinism contract.
  bool hazard_mode = false;

  /// Throws ConfigError when some thread would read outside its block.
  void validate() const;
  /// Global shared-array index read by thread j through `comb`.
  [[nodiscard]] std::size_t partner(std::size_t j, std::span<const std::uint32_t> comb) const;
};

/// Combination arrays drawn as random permutations of [0, c).
std::vector<std::uint32_t> random_combination(std::size_t c, SeedExpander& rng);

struct NaiveGrid {
  std::vector<CiSequential> slots;
};

struct ImprovedSlot {
  Xor128x32 xorlike;
  std::uint32_t x = 0;
};

struct ImprovedGrid {
  GridConfig config;
  std::vector<ImprovedSlot> slots;
  std::vector<std::uint32_t> shared;
};

/// Per-thread parameters expanded from `master_seed`; thread t consumes the
/// expander stream in order t = 0, 1, ...
NaiveGrid seed_naive_grid(std::uint64_t master_seed, std::size_t threads);
ImprovedGrid seed_improved_grid(std::uint64_t master_seed, GridConfig config);

/// Each thread produces n successive sequential-generator outputs; word i of
/// thread t is stored at index n·t + i. Slot states are advanced in place.
std::vector<std::uint32_t> naive_kernel_run(NaiveGrid& grid, std::size_t n, unsigned workers = 1);

/// n lockstep rounds of t = xorlike() ^ shared[o1] ^ shared[o2]; shared[j] = t;
/// x ^= t. All reads in a round see the previous round's shared array.
std::vector<std::uint32_t> improved_kernel_run(ImprovedGrid& grid, std::size_t n, unsigned workers = 1);

struct MemoryFootprint {
  std::uint64_t words = 0;
  std::uint64_t bytes = 0;
};

/// 32-bit words held by the naive kernel: per thread 2·(4+5+6) for the
/// xor-like internals plus one seed and n outputs.
constexpr MemoryFootprint memory_footprint(std::uint64_t threads, std::uint64_t n) noexcept {
  const std::uint64_t words = threads * ((4 + 5 + 6) * 2 + (1 + n));
  return {words, words * 4};
}

}  // namespace ciprng
