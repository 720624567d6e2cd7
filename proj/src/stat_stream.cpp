#include "ciprng/stat_stream.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "ciprng/errors.hpp"

namespace ciprng {

namespace {

double igamc(double a, double x) {
  if (x <= 0) return 1.0;
  return boost::math::gamma_q(a, x);
}

double normal_two_sided(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

std::vector<std::uint8_t> unpack(const BitStream& s) {
  std::vector<std::uint8_t> bits(s.bit_count);
  for (std::size_t i = 0; i < s.bit_count; ++i) bits[i] = static_cast<std::uint8_t>(s.bit(i));
  return bits;
}

}  // namespace

BitStream collect_bits(const WordSource& source, std::size_t bits) {
  BitStream s;
  s.words.resize((bits + 31) / 32);
  for (auto& w : s.words) w = source();
  s.bit_count = bits;
  return s;
}

BitStream bits_from_words(std::vector<std::uint32_t> words) {
  BitStream s;
  s.bit_count = words.size() * 32;
  s.words = std::move(words);
  return s;
}

bool TestReport::all_pass() const noexcept {
  return std::all_of(results.begin(), results.end(), [](const TestResult& r) { return r.pass; });
}

TestResult monobit_test(std::span<const std::uint8_t> bits) {
  const auto n = static_cast<double>(bits.size());
  const auto ones = static_cast<double>(std::count(bits.begin(), bits.end(), 1));
  const double s = std::abs(2 * ones - n) / std::sqrt(n);
  return {"monobit", s, std::erfc(s / std::sqrt(2.0)), false};
}

TestResult block_frequency_test(std::span<const std::uint8_t> bits, std::size_t block) {
  const std::size_t blocks = bits.size() / block;
  double chi2 = 0;
  for (std::size_t b = 0; b < blocks; ++b) {
    const auto first = bits.begin() + static_cast<std::ptrdiff_t>(b * block);
    const double pi = static_cast<double>(std::count(first, first + static_cast<std::ptrdiff_t>(block), 1)) /
                      static_cast<double>(block);
    chi2 += (pi - 0.5) * (pi - 0.5);
  }
  chi2 *= 4.0 * static_cast<double>(block);
  return {"block_frequency", chi2, igamc(static_cast<double>(blocks) / 2, chi2 / 2), false};
}

TestResult runs_test(std::span<const std::uint8_t> bits) {
  const auto n = static_cast<double>(bits.size());
  const double pi = static_cast<double>(std::count(bits.begin(), bits.end(), 1)) / n;
  if (std::abs(pi - 0.5) >= 2.0 / std::sqrt(n)) return {"runs", 0, 0.0, false};
  double runs = 1;
  for (std::size_t i = 1; i < bits.size(); ++i) runs += bits[i] != bits[i - 1];
  const double expected = 2 * n * pi * (1 - pi);
  const double stat = std::abs(runs - expected) / (2 * std::sqrt(2 * n) * pi * (1 - pi));
  return {"runs", runs, std::erfc(stat), false};
}

std::vector<TestResult> serial_test(std::span<const std::uint8_t> bits) {
  // Overlapping (cyclic) pattern counts for m = 2 and m = 1.
  const std::size_t n = bits.size();
  std::array<double, 4> pairs{};
  std::array<double, 2> singles{};
  for (std::size_t i = 0; i < n; ++i) {
    singles[bits[i]] += 1;
    pairs[(bits[i] << 1) | bits[(i + 1) % n]] += 1;
  }
  const auto nd = static_cast<double>(n);
  auto psi = [nd](auto counts, double patterns) {
    double s = 0;
    for (double c : counts) s += c * c;
    return patterns / nd * s - nd;
  };
  const double psi2 = psi(pairs, 4), psi1 = psi(singles, 2);
  const double del1 = psi2 - psi1;
  const double del2 = psi2 - 2 * psi1;
  return {{"serial_1", del1, igamc(1.0, del1 / 2), false}, {"serial_2", del2, igamc(0.5, del2 / 2), false}};
}

TestResult byte_chi_square_test(std::span<const std::uint8_t> bits) {
  const std::size_t bytes = bits.size() / 8;
  std::array<double, 256> counts{};
  for (std::size_t k = 0; k < bytes; ++k) {
    unsigned v = 0;
    for (std::size_t j = 0; j < 8; ++j) v = (v << 1) | bits[8 * k + j];
    counts[v] += 1;
  }
  const double expected = static_cast<double>(bytes) / 256;
  double chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  return {"byte_chi_square", chi2, igamc(255.0 / 2, chi2 / 2), false};
}

TestResult autocorrelation_test(std::span<const std::uint8_t> bits, std::size_t lag) {
  const std::size_t m = bits.size() - lag;
  double a = 0;
  for (std::size_t i = 0; i < m; ++i) a += bits[i] ^ bits[i + lag];
  const auto md = static_cast<double>(m);
  const double z = 2 * (a - md / 2) / std::sqrt(md);
  return {"autocorrelation_lag" + std::to_string(lag), z, normal_two_sided(z), false};
}

TestReport run_battery(const BitStream& stream, double alpha) {
  if (stream.bit_count < kMinBatteryBits) throw DomainError("battery: at least 10^6 bits are required");
  if (!(alpha > 0 && alpha < 0.5)) throw DomainError("battery: alpha must lie in (0, 0.5)");
  const std::vector<std::uint8_t> bits = unpack(stream);
  TestReport report;
  report.alpha = alpha;
  report.bits = stream.bit_count;
  report.results.push_back(monobit_test(bits));
  report.results.push_back(block_frequency_test(bits));
  report.results.push_back(runs_test(bits));
  for (auto& r : serial_test(bits)) report.results.push_back(std::move(r));
  report.results.push_back(byte_chi_square_test(bits));
  report.results.push_back(autocorrelation_test(bits));
  for (auto& r : report.results) {
    r.p_value = std::clamp(r.p_value, 0.0, 1.0);
    r.pass = r.p_value >= alpha && r.p_value <= 1 - alpha;
  }
  return report;
}

double ks_uniformity_pvalue(std::vector<double> samples) {
  if (samples.empty()) throw DomainError("ks: no samples");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = std::clamp(samples[i], 0.0, 1.0);
    d = std::max({d, (static_cast<double>(i) + 1) / n - u, u - static_cast<double>(i) / n});
  }
  // Kolmogorov limiting distribution with the Stephens small-sample correction.
  const double sq = std::sqrt(n);
  const double lambda = (sq + 0.12 + 0.11 / sq) * d;
  if (lambda < 1e-3) return 1.0;
  double p = 0;
  for (int k = 1; k <= 100; ++k) {
    const double term = 2 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    p += term;
    if (std::abs(term) < 1e-16) break;
  }
  return std::clamp(p, 0.0, 1.0);
}

nlohmann::json to_json(const TestReport& report) {
  nlohmann::json j;
  j["alpha"] = report.alpha;
  j["bits"] = report.bits;
  j["all_pass"] = report.all_pass();
  auto& tests = j["tests"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    tests.push_back({{"name", r.name}, {"statistic", r.statistic}, {"p_value", r.p_value}, {"pass", r.pass}});
  }
  return j;
}

EmitFormat parse_emit_format(std::string_view name) {
  if (name == "raw-le32") return EmitFormat::RawLe32;
  if (name == "hex") return EmitFormat::Hex;
  if (name == "bits") return EmitFormat::Bits;
  throw DomainError("unknown output format '" + std::string(name) + "'");
}

namespace {

void emit_word(std::string& buf, std::uint32_t w, EmitFormat format) {
  static constexpr char kHex[] = "0123456789abcdef";
  switch (format) {
    case EmitFormat::RawLe32:
      for (int b = 0; b < 4; ++b) buf.push_back(static_cast<char>((w >> (8 * b)) & 0xff));
      break;
    case EmitFormat::Hex:
      for (int s = 28; s >= 0; s -= 4) buf.push_back(kHex[(w >> s) & 0xf]);
      buf.push_back('\n');
      break;
    case EmitFormat::Bits:
      for (int s = 31; s >= 0; --s) buf.push_back(((w >> s) & 1) ? '1' : '0');
      buf.push_back('\n');
      break;
  }
}

void flush(std::ostream& out, std::string& buf) {
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("emit: output sink failed");
  buf.clear();
}

}  // namespace

void emit(std::ostream& out, std::span<const std::uint32_t> words, EmitFormat format) {
  std::string buf;
  for (std::uint32_t w : words) {
    emit_word(buf, w, format);
    if (buf.size() >= (1 << 16)) flush(out, buf);
  }
  flush(out, buf);
  out.flush();
  if (!out) throw IoError("emit: output sink failed");
}

void emit(std::ostream& out, const WordSource& source, std::size_t count, EmitFormat format) {
  std::string buf;
  for (std::size_t i = 0; i < count; ++i) {
    emit_word(buf, source(), format);
    if (buf.size() >= (1 << 16)) flush(out, buf);
  }
  flush(out, buf);
  out.flush();
  if (!out) throw IoError("emit: output sink failed");
}

std::vector<std::uint32_t> parse_emitted(std::istream& in, EmitFormat format) {
  std::vector<std::uint32_t> words;
  if (format == EmitFormat::RawLe32) {
    std::array<unsigned char, 4> b{};
    while (in.read(reinterpret_cast<char*>(b.data()), 4)) {
      words.push_back(std::uint32_t{b[0]} | std::uint32_t{b[1]} << 8 | std::uint32_t{b[2]} << 16 |
                      std::uint32_t{b[3]} << 24);
    }
    if (in.gcount() != 0) throw DecodeError("raw-le32 stream length is not a multiple of 4");
    return words;
  }
  std::string tok;
  const int base = format == EmitFormat::Hex ? 16 : 2;
  const std::size_t width = format == EmitFormat::Hex ? 8 : 32;
  while (in >> tok) {
    if (tok.size() != width) throw DecodeError("malformed word '" + tok + "'");
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(tok, &pos, base);
    } catch (const std::exception&) {
      throw DecodeError("malformed word '" + tok + "'");
    }
    if (pos != tok.size()) throw DecodeError("malformed word '" + tok + "'");
    words.push_back(static_cast<std::uint32_t>(v));
  }
  return words;
}

nlohmann::json machine_metadata() {
  nlohmann::json m;
  m["hardware_concurrency"] = std::thread::hardware_concurrency();
#if defined(__clang__)
  m["compiler"] = std::string("clang ") + __clang_version__;
#elif defined(__GNUC__)
  m["compiler"] = std::string("gcc ") + __VERSION__;
#else
  m["compiler"] = "unknown";
#endif
#if defined(__x86_64__)
  m["arch"] = "x86_64";
#elif defined(__aarch64__)
  m["arch"] = "aarch64";
#else
  m["arch"] = "other";
#endif
#ifdef NDEBUG
  m["build"] = "release";
#else
  m["build"] = "debug";
#endif
  return m;
}

nlohmann::json to_json(const BenchmarkResult& r) {
  return {{"generator", r.generator},
          {"samples", r.samples},
          {"seconds", r.seconds},
          {"samples_per_second", r.samples_per_second},
          {"machine", r.machine}};
}

}  // namespace ciprng
