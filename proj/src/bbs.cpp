#include "ciprng/bbs.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ciprng/errors.hpp"
#include "ciprng/lockstep.hpp"

namespace ciprng {

namespace {

constexpr std::array<std::uint32_t, 13> kPrimePool{131, 139, 151, 163, 167, 179, 191,
                                                   199, 211, 223, 227, 239, 251};

bool is_small_prime(std::uint32_t v) {
  if (v < 2) return false;
  for (std::uint32_t d = 2; d * d <= v; ++d) {
    if (v % d == 0) return false;
  }
  return true;
}

}  // namespace

std::span<const std::uint32_t> bbs_prime_pool() noexcept { return kPrimePool; }

BbsModulus bbs_modulus(std::uint32_t p, std::uint32_t q) {
  if (p == q) throw DomainError("bbs: p and q must be distinct");
  for (std::uint32_t v : {p, q}) {
    if (!is_small_prime(v)) throw DomainError("bbs: " + std::to_string(v) + " is not prime");
    if (v % 4 != 3) throw DomainError("bbs: " + std::to_string(v) + " is not congruent to 3 mod 4");
  }
  const std::uint64_t m = std::uint64_t{p} * q;
  if (m >= (1u << 16)) throw DomainError("bbs: modulus must be below 2^16");
  return {p, q, static_cast<std::uint32_t>(m)};
}

BbsModulus bbs_keygen(SeedExpander& rng) {
  const std::uint64_t a = rng.below(kPrimePool.size());
  std::uint64_t b = rng.below(kPrimePool.size() - 1);
  if (b >= a) ++b;
  return bbs_modulus(kPrimePool[a], kPrimePool[b]);
}

BbsState::BbsState(std::uint32_t x, std::uint32_t modulus) : x_(x), m_(modulus) {
  bool factored = false;
  for (std::uint32_t p = 3; p * p < modulus && !factored; ++p) {
    if (modulus % p == 0) {
      bbs_modulus(p, modulus / p);
      factored = true;
    }
  }
  if (!factored) throw DomainError("bbs: modulus is not a product of two primes");
  if (x <= 1 || x >= modulus - 1) throw DomainError("bbs: seed must lie in (1, M-1)");
  if (std::gcd(x, modulus) != 1) throw DomainError("bbs: seed shares a factor with M");
  if ((x * x) % modulus == 1) throw DomainError("bbs: seed is a square root of 1");
}

BbsState seed_bbs_state(std::uint32_t m, SeedExpander& rng) {
  for (;;) {
    const auto x = static_cast<std::uint32_t>(2 + rng.below(m - 3));
    if (std::gcd(x, m) == 1 && (x * x) % m != 1) return BbsState(x, m);
  }
}

BbsGridConfig::BbsGridConfig() { comb.fill(std::vector<std::uint32_t>{0}); }

std::size_t BbsGridConfig::partner(std::size_t j, std::span<const std::uint32_t> array) const {
  const std::size_t block = block_size == 0 ? threads : block_size;
  const std::size_t base = j - j % block;
  const std::size_t local = j - base;
  const std::size_t offset = local % combination_size;
  return base + local - offset + array[offset];
}

void BbsGridConfig::validate() const {
  if (threads == 0) throw ConfigError("bbs grid: at least one thread is required");
  if (combination_size == 0) throw ConfigError("bbs grid: combination size must be positive");
  for (const auto& array : comb) {
    if (array.size() != combination_size) throw ConfigError("bbs grid: combination arrays must have c entries");
    for (std::uint32_t v : array) {
      if (v >= combination_size) throw ConfigError("bbs grid: combination index " + std::to_string(v) + " >= c");
    }
  }
  const std::size_t block = block_size == 0 ? threads : block_size;
  for (std::size_t j = 0; j < threads; ++j) {
    const std::size_t block_end = std::min(threads, j - j % block + block);
    for (const auto& array : comb) {
      if (partner(j, array) >= block_end) {
        throw ConfigError("bbs grid: thread " + std::to_string(j) + " combines with a thread outside its block");
      }
    }
  }
}

std::uint32_t bbs_compose_strategy(BbsThreadState& ts) noexcept {
  auto& b = ts.bbs;
  std::uint32_t t = 0;
  for (auto& g : b) {
    t <<= 4;
    t |= g.next4();
  }
  std::uint32_t shift = b[2].next4() & 3u;
  t <<= shift;
  t |= b[0].next4() & kArrayShift[shift];
  shift = b[6].next4() & 3u;
  t <<= shift;
  t |= b[1].next4() & kArrayShift[shift];
  return t;
}

std::array<std::size_t, 2> bbs_select_partners(const BbsThreadState& ts, const BbsGridConfig& config,
                                               std::size_t j) {
  return {config.partner(j, config.comb[ts.bbs[0].x() & 7u]),
          config.partner(j, config.comb[8 + (ts.bbs[1].x() & 7u)])};
}

BbsStep bbs_kernel_next(BbsThreadState& ts, std::span<const std::uint32_t> shmem_prev, std::size_t o1,
                        std::size_t o2) noexcept {
  std::uint32_t t = bbs_compose_strategy(ts);
  t ^= shmem_prev[o1] ^ shmem_prev[o2];
  ts.x ^= t;
  return {t, ts.x};
}

void rotate_states(BbsThreadState& ts) noexcept {
  std::rotate(ts.bbs.rbegin(), ts.bbs.rbegin() + 1, ts.bbs.rend());
}

BbsGrid seed_bbs_grid(std::uint64_t master_seed, BbsGridConfig config) {
  config.validate();
  SeedExpander rng(master_seed);
  BbsGrid grid;
  grid.threads.reserve(config.threads);
  grid.shared.reserve(config.threads);
  for (std::size_t t = 0; t < config.threads; ++t) {
    auto make = [&]() { return seed_bbs_state(bbs_keygen(rng).m, rng); };
    BbsThreadState ts{{make(), make(), make(), make(), make(), make(), make(), make()}, rng.next32()};
    grid.threads.push_back(ts);
    grid.shared.push_back(rng.next32());
  }
  grid.config = std::move(config);
  return grid;
}

std::vector<std::uint32_t> bbs_grid_run(BbsGrid& grid, std::size_t n, unsigned workers) {
  const BbsGridConfig& cfg = grid.config;
  cfg.validate();
  const std::size_t threads = cfg.threads;
  std::vector<std::array<std::size_t, 2>> partners(threads);
  for (std::size_t j = 0; j < threads; ++j) partners[j] = bbs_select_partners(grid.threads[j], cfg, j);

  std::vector<std::uint32_t> out(threads * n);
  std::vector<std::uint32_t> prev = grid.shared;
  std::vector<std::uint32_t> next(threads);
  detail::run_lockstep(
      threads, n, workers,
      [&](std::size_t i, std::size_t begin, std::size_t end) {
        for (std::size_t j = begin; j < end; ++j) {
          const BbsStep s = bbs_kernel_next(grid.threads[j], prev, partners[j][0], partners[j][1]);
          next[j] = s.t;
          out[n * j + i] = s.x;
        }
      },
      [&](std::size_t) { prev.swap(next); });
  grid.shared = std::move(prev);
  for (auto& ts : grid.threads) rotate_states(ts);
  return out;
}

}  // namespace ciprng
