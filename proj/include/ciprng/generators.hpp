#pragma once

// Named 32-bit word streams for the command line, the battery and the
// benchmark. Seed 0 selects the reference default seeds where a generator has
// them; any other seed goes through SeedExpander.

#include <cstdint>
#include <span>
#include <string_view>

#include "ciprng/bbs.hpp"
#include "ciprng/parallel.hpp"
#include "ciprng/stat_stream.hpp"

namespace ciprng {

/// xorshift32, xorshift64, xor128, xorwow, ci-seq, naive, improved, bbs.
std::span<const std::string_view> generator_names() noexcept;

/// 64-bit generators yield the low then the high half of each output. Kernel
/// streams read the grid output thread by thread, one kernel call at a time.
WordSource make_word_source(std::string_view name, std::uint64_t seed);

/// Grid shapes used by the kernel streams.
inline constexpr std::size_t kStreamThreads = 64;
inline constexpr std::size_t kStreamCombination = 4;
inline constexpr std::size_t kStreamBatch = 64;

GridConfig default_grid_config(std::size_t threads, std::size_t combination_size, std::uint64_t seed);
BbsGridConfig default_bbs_config(std::size_t threads, std::size_t combination_size, std::uint64_t seed);

}  // namespace ciprng
