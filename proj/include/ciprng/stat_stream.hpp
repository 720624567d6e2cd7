#pragma once

// Desk-scale randomness battery, stream emission for external suites, and a
// throughput harness.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ciprng {

using WordSource = std::function<std::uint32_t()>;

/// Bits of a word sequence, most significant bit of each word first.
struct BitStream {
  std::vector<std::uint32_t> words;
  std::size_t bit_count = 0;

  [[nodiscard]] unsigned bit(std::size_t i) const noexcept { return (words[i >> 5] >> (31 - (i & 31))) & 1u; }
};

BitStream collect_bits(const WordSource& source, std::size_t bits);
BitStream bits_from_words(std::vector<std::uint32_t> words);

struct TestResult {
  std::string name;
  double statistic = 0;
  double p_value = 0;
  bool pass = false;
};

struct TestReport {
  double alpha = 0;
  std::size_t bits = 0;
  std::vector<TestResult> results;

  [[nodiscard]] bool all_pass() const noexcept;
};

inline constexpr std::size_t kMinBatteryBits = 1'000'000;

/// Monobit, block frequency (m = 128), runs, serial (m = 2, both statistics),
/// byte chi-square and lag-8 autocorrelation. A test passes when its p-value
/// lies in [α, 1-α]. Streams shorter than 10^6 bits are rejected.
TestReport run_battery(const BitStream& stream, double alpha);

TestResult monobit_test(std::span<const std::uint8_t> bits);
TestResult block_frequency_test(std::span<const std::uint8_t> bits, std::size_t block = 128);
TestResult runs_test(std::span<const std::uint8_t> bits);
std::vector<TestResult> serial_test(std::span<const std::uint8_t> bits);
TestResult byte_chi_square_test(std::span<const std::uint8_t> bits);
TestResult autocorrelation_test(std::span<const std::uint8_t> bits, std::size_t lag = 8);

/// Asymptotic Kolmogorov-Smirnov p-value of `samples` against U(0, 1).
double ks_uniformity_pvalue(std::vector<double> samples);

nlohmann::json to_json(const TestReport& report);

enum class EmitFormat { RawLe32, Hex, Bits };

/// "raw-le32", "hex" or "bits"; throws DomainError otherwise.
EmitFormat parse_emit_format(std::string_view name);

/// raw-le32: 4 little-endian bytes per word. hex: 8 lowercase digits per word,
/// one word per line. bits: 32 '0'/'1' characters per word, MSB first, one
/// word per line. Throws IoError when the sink fails.
void emit(std::ostream& out, std::span<const std::uint32_t> words, EmitFormat format);
void emit(std::ostream& out, const WordSource& source, std::size_t count, EmitFormat format);
std::vector<std::uint32_t> parse_emitted(std::istream& in, EmitFormat format);

struct BenchmarkResult {
  std::string generator;
  std::uint64_t samples = 0;
  double seconds = 0;
  double samples_per_second = 0;
  nlohmann::json machine;
};

nlohmann::json machine_metadata();
nlohmann::json to_json(const BenchmarkResult& result);

/// Wall-clock throughput of 32-bit outputs over at least `duration` (>= 1 s).
template <typename Generator>
BenchmarkResult benchmark(std::string name, Generator& gen, std::chrono::duration<double> duration);

}  // namespace ciprng

#include "ciprng/detail/benchmark_impl.hpp"
