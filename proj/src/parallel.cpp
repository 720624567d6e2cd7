#include "ciprng/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ciprng/lockstep.hpp"

namespace ciprng {

std::size_t GridConfig::partner(std::size_t j, std::span<const std::uint32_t> comb) const {
  const std::size_t block = block_size == 0 ? threads : block_size;
  const std::size_t base = j - j % block;
  const std::size_t local = j - base;
  const std::size_t offset = local % combination_size;
  return base + local - offset + comb[offset];
}

void GridConfig::validate() const {
  if (threads == 0) throw ConfigError("grid: at least one thread is required");
  if (combination_size == 0) throw ConfigError("grid: combination size must be positive");
  if (comb1.size() != combination_size || comb2.size() != combination_size) {
    throw ConfigError("grid: combination arrays must have combination_size entries");
  }
  for (auto c : {std::span<const std::uint32_t>(comb1), std::span<const std::uint32_t>(comb2)}) {
    for (std::uint32_t v : c) {
      if (v >= combination_size) throw ConfigError("grid: combination index " + std::to_string(v) + " >= c");
    }
  }
  const std::size_t block = block_size == 0 ? threads : block_size;
  for (std::size_t j = 0; j < threads; ++j) {
    const std::size_t block_end = std::min(threads, j - j % block + block);
    if (partner(j, comb1) >= block_end || partner(j, comb2) >= block_end) {
      throw ConfigError("grid: thread " + std::to_string(j) + " combines with a thread outside its block");
    }
  }
}

std::vector<std::uint32_t> random_combination(std::size_t c, SeedExpander& rng) {
  std::vector<std::uint32_t> perm(c);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = c; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  return perm;
}

namespace {

Xor128x32 seed_xor128x32(SeedExpander& rng) {
  for (;;) {
    const std::uint64_t a = rng.next(), b = rng.next();
    Xor128x32::State s{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    if ((s[0] | s[1] | s[2] | s[3]) != 0) return Xor128x32(s);
  }
}

CiSequential seed_sequential(SeedExpander& rng) {
  XorShift64 xs(rng.next_nonzero());
  Xor128x64 x128({rng.next_nonzero(), rng.next(), rng.next(), rng.next()});
  XorWowx64 wow({rng.next_nonzero(), rng.next(), rng.next(), rng.next(), rng.next()}, rng.next());
  const std::uint32_t x = rng.next32();
  return CiSequential(x, xs, x128, wow);
}

}  // namespace

NaiveGrid seed_naive_grid(std::uint64_t master_seed, std::size_t threads) {
  SeedExpander rng(master_seed);
  NaiveGrid grid;
  grid.slots.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) grid.slots.push_back(seed_sequential(rng));
  return grid;
}

ImprovedGrid seed_improved_grid(std::uint64_t master_seed, GridConfig config) {
  config.validate();
  SeedExpander rng(master_seed);
  ImprovedGrid grid;
  grid.slots.reserve(config.threads);
  grid.shared.reserve(config.threads);
  for (std::size_t t = 0; t < config.threads; ++t) {
    Xor128x32 xl = seed_xor128x32(rng);
    grid.slots.push_back({xl, rng.next32()});
    grid.shared.push_back(rng.next32());
  }
  grid.config = std::move(config);
  return grid;
}

std::vector<std::uint32_t> naive_kernel_run(NaiveGrid& grid, std::size_t n, unsigned workers) {
  std::vector<std::uint32_t> out(grid.slots.size() * n);
  detail::parallel_ranges(grid.slots.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t t = begin; t < end; ++t) {
      CiSequential local = grid.slots[t];
      for (std::size_t i = 0; i < n; ++i) out[n * t + i] = local.next();
      grid.slots[t] = local;
    }
  });
  return out;
}

std::vector<std::uint32_t> improved_kernel_run(ImprovedGrid& grid, std::size_t n, unsigned workers) {
  const GridConfig& cfg = grid.config;
  cfg.validate();
  const std::size_t threads = cfg.threads;
  std::vector<std::size_t> o1(threads), o2(threads);
  for (std::size_t j = 0; j < threads; ++j) {
    o1[j] = cfg.partner(j, cfg.comb1);
    o2[j] = cfg.partner(j, cfg.comb2);
  }
  std::vector<std::uint32_t> out(threads * n);

  if (cfg.hazard_mode) {
    std::vector<std::uint32_t>& shm = grid.shared;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < threads; ++j) {
        ImprovedSlot& s = grid.slots[j];
        const std::uint32_t t = s.xorlike.next() ^ shm[o1[j]] ^ shm[o2[j]];
        shm[j] = t;
        s.x ^= t;
        out[n * j + i] = s.x;
      }
    }
    return out;
  }

  std::vector<std::uint32_t> prev = grid.shared;
  std::vector<std::uint32_t> next(threads);
  detail::run_lockstep(
      threads, n, workers,
      [&](std::size_t i, std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
          ImprovedSlot& s = grid.slots[j];
          const std::uint32_t t = s.xorlike.next() ^ prev[o1[j]] ^ prev[o2[j]];
          next[j] = t;
          s.x ^= t;
          out[n * j + i] = s.x;
        }
      },
      [&](std::size_t) { prev.swap(next); });
  grid.shared = std::move(prev);
  return out;
}

}  // namespace ciprng
