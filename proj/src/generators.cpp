#include "ciprng/generators.hpp"

#include <array>
#include <memory>
#include <string>

#include "ciprng/chaotic.hpp"
#include "ciprng/errors.hpp"

namespace ciprng {

namespace {

constexpr std::array<std::string_view, 8> kNames{"xorshift32", "xorshift64", "xor128", "xorwow",
                                                 "ci-seq",     "naive",      "improved", "bbs"};

template <typename Gen64>
WordSource halves(Gen64 gen) {
  struct State {
    Gen64 gen;
    std::uint64_t word = 0;
    bool high = false;
  };
  auto s = std::make_shared<State>(State{std::move(gen)});
  return [s]() -> std::uint32_t {
    if (s->high) {
      s->high = false;
      return static_cast<std::uint32_t>(s->word >> 32);
    }
    s->word = s->gen.next();
    s->high = true;
    return static_cast<std::uint32_t>(s->word);
  };
}

template <typename Grid, typename Run>
WordSource kernel_stream(Grid grid, Run run) {
  struct State {
    Grid grid;
    std::vector<std::uint32_t> buffer;
    std::size_t pos = 0;
  };
  auto s = std::make_shared<State>(State{std::move(grid), {}, 0});
  return [s, run]() -> std::uint32_t {
    if (s->pos == s->buffer.size()) {
      s->buffer = run(s->grid);
      s->pos = 0;
    }
    return s->buffer[s->pos++];
  };
}

}  // namespace

std::span<const std::string_view> generator_names() noexcept { return kNames; }

GridConfig default_grid_config(std::size_t threads, std::size_t combination_size, std::uint64_t seed) {
  SeedExpander rng(SeedExpander::mix(seed ^ 0x636f6d62696e6531ULL));
  GridConfig cfg;
  cfg.threads = threads;
  cfg.combination_size = combination_size;
  cfg.comb1 = random_combination(combination_size, rng);
  cfg.comb2 = random_combination(combination_size, rng);
  return cfg;
}

BbsGridConfig default_bbs_config(std::size_t threads, std::size_t combination_size, std::uint64_t seed) {
  SeedExpander rng(SeedExpander::mix(seed ^ 0x636f6d6262627331ULL));
  BbsGridConfig cfg;
  cfg.threads = threads;
  cfg.combination_size = combination_size;
  for (auto& a : cfg.comb) a = random_combination(combination_size, rng);
  return cfg;
}

WordSource make_word_source(std::string_view name, std::uint64_t seed) {
  SeedExpander rng(seed);
  if (name == "xorshift32") {
    std::uint32_t z = 2463534242u;  // Marsaglia's example seed
    if (seed != 0) {
      do z = rng.next32();
      while (z == 0);
    }
    return [g = XorShift32(z)]() mutable { return g.next(); };
  }
  if (name == "xorshift64") return halves(seed == 0 ? XorShift64() : XorShift64(rng.next_nonzero()));
  if (name == "xor128") {
    return halves(seed == 0 ? Xor128x64() : Xor128x64({rng.next_nonzero(), rng.next(), rng.next(), rng.next()}));
  }
  if (name == "xorwow") {
    return halves(seed == 0 ? XorWowx64()
                            : XorWowx64({rng.next_nonzero(), rng.next(), rng.next(), rng.next(), rng.next()},
                                        rng.next()));
  }
  if (name == "ci-seq") {
    CiSequential g = seed == 0 ? CiSequential() : seed_naive_grid(seed, 1).slots.front();
    return [g]() mutable { return g.next(); };
  }
  if (name == "naive") {
    return kernel_stream(seed_naive_grid(seed, kStreamThreads),
                         [](NaiveGrid& g) { return naive_kernel_run(g, kStreamBatch); });
  }
  if (name == "improved") {
    return kernel_stream(seed_improved_grid(seed, default_grid_config(kStreamThreads, kStreamCombination, seed)),
                         [](ImprovedGrid& g) { return improved_kernel_run(g, kStreamBatch); });
  }
  if (name == "bbs") {
    return kernel_stream(seed_bbs_grid(seed, default_bbs_config(kStreamThreads, kStreamCombination, seed)),
                         [](BbsGrid& g) { return bbs_grid_run(g, kStreamBatch); });
  }
  throw DomainError("unknown generator '" + std::string(name) + "'");
}

}  // namespace ciprng
