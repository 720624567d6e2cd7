#pragma once

#include <algorithm>
#include <barrier>
#include <cstddef>
#include <thread>
#include <vector>

namespace ciprng::detail {

/// Runs `rounds` lockstep rounds over logical threads [0, count). In each round
/// `compute(round, begin, end)` is called on disjoint ranges by up to `workers`
/// OS threads; `commit(round)` runs once after every range of the round has
/// finished and before the next round starts.
template <typename Compute, typename Commit>
void run_lockstep(std::size_t count, std::size_t rounds, unsigned workers, Compute&& compute, Commit&& commit) {
  const std::size_t pool = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (pool == 1) {
    for (std::size_t r = 0; r < rounds; ++r) {
      compute(r, std::size_t{0}, count);
      commit(r);
    }
    return;
  }
  std::size_t round = 0;
  auto on_phase = [&]() noexcept {
    commit(round);
    ++round;
  };
  std::barrier sync(static_cast<std::ptrdiff_t>(pool), on_phase);
  std::vector<std::jthread> team;
  team.reserve(pool);
  for (std::size_t w = 0; w < pool; ++w) {
    const std::size_t begin = count * w / pool;
    const std::size_t end = count * (w + 1) / pool;
    team.emplace_back([&, begin, end] {
      for (std::size_t r = 0; r < rounds; ++r) {
        compute(r, begin, end);
        sync.arrive_and_wait();
      }
    });
  }
}

/// Static partition of [0, count) over up to `workers` OS threads.
template <typename Body>
void parallel_ranges(std::size_t count, unsigned workers, Body&& body) {
  run_lockstep(count, 1, workers, [&](std::size_t, std::size_t b, std::size_t e) { body(b, e); },
               [](std::size_t) {});
}

}  // namespace ciprng::detail
