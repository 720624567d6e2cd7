#pragma once

#include "ciprng/errors.hpp"
#include "ciprng/stat_stream.hpp"

namespace ciprng {

template <typename Generator>
BenchmarkResult benchmark(std::string name, Generator& gen, std::chrono::duration<double> duration) {
  if (duration < std::chrono::seconds(1)) throw DomainError("benchmark: duration must be at least 1 s");
  using Clock = std::chrono::steady_clock;
  constexpr std::uint64_t kBatch = 1 << 16;
  std::uint64_t sink = 0;
  std::uint64_t samples = 0;
  const auto start = Clock::now();
  auto now = start;
  do {
    for (std::uint64_t i = 0; i < kBatch; ++i) sink ^= static_cast<std::uint32_t>(gen());
    samples += kBatch;
    now = Clock::now();
  } while (now - start < duration);
  volatile std::uint64_t keep = sink;
  (void)keep;

  BenchmarkResult r;
  r.generator = std::move(name);
  r.samples = samples;
  r.seconds = std::chrono::duration<double>(now - start).count();
  r.samples_per_second = static_cast<double>(samples) / r.seconds;
  r.machine = machine_metadata();
  return r;
}

}  // namespace ciprng
