// ciprng command-line front end.
//
//   ciprng gen      --generator NAME --seed S --count N [--format F] [--out FILE]
//   ciprng analyze  FILE [--cesaro-k K] [--tol T]
//   ciprng kernel   naive|improved|bbs --threads T --count N [--comb-size C]
//                   [--comb-file FILE] [--seed S] [--workers W] [--format F] [--out FILE]
//   ciprng battery  --generator NAME --seed S [--count BITS] [--alpha A]
//   ciprng bench    --generator NAME [--seconds S]
//   ciprng bg keygen  (--seed S [--prime-bits B] | --p P --q Q [--s0 S0]) --out PREFIX
//   ciprng bg encrypt --key PUB --message BITS [--chaotic] --seed S [--out FILE]
//   ciprng bg decrypt --key SEC --in FILE [--chaotic]
//
// Exit status: 0 success, 1 domain error, 2 usage error.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ciprng/bbs.hpp"
#include "ciprng/blum_goldwasser.hpp"
#include "ciprng/chaos_verifier.hpp"
#include "ciprng/errors.hpp"
#include "ciprng/generators.hpp"
#include "ciprng/parallel.hpp"
#include "ciprng/stat_stream.hpp"

namespace {

using namespace ciprng;

unsigned worker_count(unsigned requested) {
  unsigned workers = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* cap = std::getenv("CIPRNG_THREADS")) {
    try {
      const unsigned long v = std::stoul(cap);
      if (v > 0) workers = std::min<unsigned>(workers, static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw DomainError("CIPRNG_THREADS must be a positive integer");
    }
  }
  return workers;
}

/// Opens `path` for writing, or returns std::cout for "" and "-".
class OutputSink {
 public:
  explicit OutputSink(const std::string& path, bool binary = false) {
    if (path.empty() || path == "-") return;
    file_.open(path, binary ? std::ios::binary | std::ios::out : std::ios::out);
    if (!file_) throw IoError("cannot open '" + path + "' for writing");
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

std::vector<std::vector<std::uint32_t>> read_comb_file(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::vector<std::uint32_t>> arrays;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::uint32_t> a;
    long long v = 0;
    while (ls >> v) {
      if (v < 0) throw DecodeError("comb file: negative index");
      a.push_back(static_cast<std::uint32_t>(v));
    }
    if (!ls.eof()) throw DecodeError("comb file: non-integer token in '" + line + "'");
    arrays.push_back(std::move(a));
  }
  return arrays;
}

std::vector<std::uint8_t> parse_bits(const std::string& text) {
  std::vector<std::uint8_t> bits;
  for (char ch : text) {
    if (ch == '0' || ch == '1') {
      bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    } else if (ch != ' ' && ch != '\n' && ch != '\r' && ch != '_') {
      throw DomainError(std::string("message must be a string of 0/1 bits, got '") + ch + "'");
    }
  }
  return bits;
}

std::string bits_to_string(const std::vector<std::uint8_t>& bits) {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

struct GenOptions {
  std::string generator;
  std::uint64_t seed = 0;
  std::size_t count = 0;
  std::string format = "raw-le32";
  std::string out;
};

struct AnalyzeOptions {
  std::string file;
  unsigned cesaro_k = 64;
  double tol = 1e-3;
};

struct KernelOptions {
  std::string kind;
  std::size_t threads = 1;
  std::size_t count = 1;
  std::size_t comb_size = 1;
  std::string comb_file;
  std::uint64_t seed = 0;
  unsigned workers = 0;
  bool hazard = false;
  std::string format = "raw-le32";
  std::string out;
};

struct BatteryOptions {
  std::string generator;
  std::uint64_t seed = 0;
  std::size_t count = 1'000'000;
  double alpha = 0.01;
};

struct BenchOptions {
  std::string generator;
  std::uint64_t seed = 0;
  double seconds = 1.0;
};

struct BgOptions {
  std::uint64_t seed = 0;
  unsigned prime_bits = 16;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t s0 = 0;
  std::string key;
  std::string message;
  std::string in;
  std::string out;
  bool chaotic = false;
};

int run_gen(const GenOptions& o) {
  const EmitFormat format = parse_emit_format(o.format);
  const WordSource source = make_word_source(o.generator, o.seed);
  OutputSink sink(o.out, format == EmitFormat::RawLe32);
  emit(sink.stream(), source, o.count, format);
  return 0;
}

int run_analyze(const AnalyzeOptions& o) {
  auto in = open_input(o.file);
  const BooleanFunction f = read_boolean_function(in);
  const SccCertificate cert = is_devaney_chaotic(f);
  nlohmann::json report;
  report["n"] = f.dim();
  report["chaotic"] = cert.strongly_connected;
  report["scc_count"] = cert.component_count;
  if (f.dim() <= MarkovMatrix::kMaxDim) {
    report["doubly_stochastic"] = build_markov_matrix(f).is_doubly_stochastic();
  } else {
    report["doubly_stochastic"] = nullptr;
  }
  if (f.dim() <= 10) {
    report["cesaro_deviation"] = cesaro_deviation(f, o.cesaro_k);
    report["cesaro_k"] = o.cesaro_k;
  } else {
    report["cesaro_deviation"] = nullptr;
  }
  std::cout << report.dump(2) << '\n';
  return 0;
}

int run_kernel(const KernelOptions& o) {
  const EmitFormat format = parse_emit_format(o.format);
  const unsigned workers = worker_count(o.workers);
  std::optional<std::vector<std::vector<std::uint32_t>>> arrays;
  std::size_t c = o.comb_size;
  if (!o.comb_file.empty()) {
    arrays = read_comb_file(o.comb_file);
    if (arrays->empty()) throw ConfigError("comb file: no arrays");
    c = arrays->front().size();
  }
  std::vector<std::uint32_t> words;
  if (o.kind == "naive") {
    NaiveGrid grid = seed_naive_grid(o.seed, o.threads);
    words = naive_kernel_run(grid, o.count, workers);
  } else if (o.kind == "improved") {
    GridConfig cfg = default_grid_config(o.threads, c, o.seed);
    if (arrays) {
      if (arrays->size() != 2) throw ConfigError("comb file: the improved kernel needs 2 arrays");
      cfg.comb1 = (*arrays)[0];
      cfg.comb2 = (*arrays)[1];
    }
    cfg.hazard_mode = o.hazard;
    ImprovedGrid grid = seed_improved_grid(o.seed, cfg);
    words = improved_kernel_run(grid, o.count, workers);
  } else {
    BbsGridConfig cfg = default_bbs_config(o.threads, c, o.seed);
    if (arrays) {
      if (arrays->size() != 16) throw ConfigError("comb file: the bbs kernel needs 16 arrays");
      std::copy(arrays->begin(), arrays->end(), cfg.comb.begin());
    }
    BbsGrid grid = seed_bbs_grid(o.seed, cfg);
    words = bbs_grid_run(grid, o.count, workers);
  }
  OutputSink sink(o.out, format == EmitFormat::RawLe32);
  emit(sink.stream(), words, format);
  return 0;
}

int run_battery_cmd(const BatteryOptions& o) {
  const WordSource source = make_word_source(o.generator, o.seed);
  const TestReport report = run_battery(collect_bits(source, o.count), o.alpha);
  nlohmann::json j = to_json(report);
  j["generator"] = o.generator;
  j["seed"] = o.seed;
  std::cout << j.dump(2) << '\n';
  return 0;
}

int run_bench(const BenchOptions& o) {
  const std::chrono::duration<double> duration(o.seconds);
  BenchmarkResult r;
  auto timed = [&](auto gen) { r = benchmark(o.generator, gen, duration); };
  // Concrete generator types where available, so the measured loop is inlined.
  if (o.generator == "xorshift32") {
    timed(XorShift32(2463534242u));
  } else if (o.generator == "xorshift64") {
    timed(XorShift64());
  } else if (o.generator == "xor128") {
    timed(Xor128x64());
  } else if (o.generator == "xorwow") {
    timed(XorWowx64());
  } else if (o.generator == "ci-seq") {
    timed(CiSequential());
  } else {
    timed(make_word_source(o.generator, o.seed));
  }
  std::cout << to_json(r).dump(2) << '\n';
  return 0;
}

int run_bg_keygen(const BgOptions& o) {
  if (o.out.empty()) throw DomainError("bg keygen: --out PREFIX is required");
  BgKeyPair key;
  if (o.p != 0 || o.q != 0) {
    key = bg_key_pair(o.p, o.q, o.s0);
  } else {
    SeedExpander rng(o.seed);
    key = bg_keygen(rng, o.prime_bits);
  }
  {
    OutputSink pub(o.out + ".pub");
    write_public_key(pub.stream(), key);
  }
  {
    OutputSink sec(o.out + ".sec");
    write_secret_key(sec.stream(), key);
  }
  std::cout << "N " << key.n << " block_bits " << bg_block_bits(key.n) << '\n';
  return 0;
}

int run_bg_encrypt(const BgOptions& o) {
  auto in = open_input(o.key);
  const BgKeyPair key = read_key(in);
  std::vector<std::uint8_t> bits;
  if (!o.message.empty()) {
    bits = parse_bits(o.message);
  } else if (!o.in.empty()) {
    auto msg = open_input(o.in);
    std::stringstream ss;
    ss << msg.rdbuf();
    bits = parse_bits(ss.str());
  } else {
    throw DomainError("bg encrypt: provide --message or --in");
  }
  SeedExpander rng(o.seed);
  const std::uint64_t r = draw_coprime_r(key.n, rng);
  const BgCiphertext ct = o.chaotic ? cbg_encrypt(key.s0, key.n, pack_blocks(bits, bg_block_bits(key.n)), r)
                                    : bg_encrypt(key.n, bits, r);
  OutputSink sink(o.out);
  write_ciphertext(sink.stream(), ct);
  return 0;
}

int run_bg_decrypt(const BgOptions& o) {
  auto key_in = open_input(o.key);
  const BgKeyPair key = read_key(key_in);
  if (key.secret.p == 0) throw DomainError("bg decrypt: --key must be a secret key file");
  auto ct_in = open_input(o.in);
  const BgCiphertext ct = read_ciphertext(ct_in);
  const std::vector<std::uint8_t> bits =
      o.chaotic ? unpack_blocks(cbg_decrypt(key.secret, key.s0, ct), ct.unit_bits) : bg_decrypt(key.secret, ct);
  OutputSink sink(o.out);
  sink.stream() << bits_to_string(bits) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic-iterations pseudorandom generators, analysis and Blum-Goldwasser tools"};
  app.require_subcommand(1);

  std::string names;
  for (auto n : generator_names()) names += (names.empty() ? "" : ", ") + std::string(n);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit a generator's 32-bit word stream");
  gen_cmd->add_option("--generator", gen.generator, "Generator: " + names)->required();
  gen_cmd->add_option("--seed", gen.seed, "64-bit seed (0 = reference default seeds)");
  gen_cmd->add_option("--count", gen.count, "Number of 32-bit words")->required();
  gen_cmd->add_option("--format", gen.format, "raw-le32, hex or bits")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output file (default: standard output)");

  AnalyzeOptions analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Chaos and uniformity report for a Boolean function file");
  analyze_cmd->add_option("file", analyze.file, "Truth table: n, then 2^n hex lines")->required();
  analyze_cmd->add_option("--cesaro-k", analyze.cesaro_k, "Number of matrix powers averaged")->capture_default_str();
  analyze_cmd->add_option("--tol", analyze.tol, "Reported uniformity tolerance")->capture_default_str();

  KernelOptions kernel;
  auto* kernel_cmd = app.add_subcommand("kernel", "Run one simulated GPU kernel call");
  kernel_cmd->add_option("kind", kernel.kind, "naive, improved or bbs")
      ->required()
      ->check(CLI::IsMember({"naive", "improved", "bbs"}));
  kernel_cmd->add_option("--threads", kernel.threads, "Logical GPU threads T")->capture_default_str();
  kernel_cmd->add_option("--count", kernel.count, "Numbers per thread n")->capture_default_str();
  kernel_cmd->add_option("--comb-size", kernel.comb_size, "Combination size c")->capture_default_str();
  kernel_cmd->add_option("--comb-file", kernel.comb_file, "Combination arrays, one per line");
  kernel_cmd->add_option("--seed", kernel.seed, "64-bit master seed")->capture_default_str();
  kernel_cmd->add_option("--workers", kernel.workers, "OS worker threads (0 = all cores, capped by CIPRNG_THREADS)");
  kernel_cmd->add_flag("--hazard", kernel.hazard, "Improved kernel: unsynchronized shared-array reads");
  kernel_cmd->add_option("--format", kernel.format, "raw-le32, hex or bits")->capture_default_str();
  kernel_cmd->add_option("--out", kernel.out, "Output file (default: standard output)");

  BatteryOptions battery;
  auto* battery_cmd = app.add_subcommand("battery", "Run the internal statistical battery (JSON report)");
  battery_cmd->add_option("--generator", battery.generator, "Generator: " + names)->required();
  battery_cmd->add_option("--seed", battery.seed, "64-bit seed")->capture_default_str();
  battery_cmd->add_option("--count", battery.count, "Number of bits (>= 1000000)")->capture_default_str();
  battery_cmd->add_option("--alpha", battery.alpha, "Significance level")->capture_default_str();

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Measure generator throughput (JSON report)");
  bench_cmd->add_option("--generator", bench.generator, "Generator: " + names)->required();
  bench_cmd->add_option("--seed", bench.seed, "64-bit seed for kernel generators")->capture_default_str();
  bench_cmd->add_option("--seconds", bench.seconds, "Measurement time (>= 1)")->capture_default_str();

  BgOptions bg;
  auto* bg_cmd = app.add_subcommand("bg", "Blum-Goldwasser key generation, encryption and decryption");
  bg_cmd->require_subcommand(1);
  auto* keygen_cmd = bg_cmd->add_subcommand("keygen", "Write PREFIX.pub (N, S0) and PREFIX.sec (p, q, S0)");
  keygen_cmd->add_option("--seed", bg.seed, "64-bit seed")->capture_default_str();
  keygen_cmd->add_option("--p", bg.p, "Explicit prime p (3 mod 4); skips random generation");
  keygen_cmd->add_option("--q", bg.q, "Explicit prime q (3 mod 4)");
  keygen_cmd->add_option("--s0", bg.s0, "Explicit S0 mask for the chaotic variant");
  keygen_cmd->add_option("--prime-bits", bg.prime_bits, "Bits per prime (5..32)")->capture_default_str();
  keygen_cmd->add_option("--out", bg.out, "Output prefix")->required();
  auto* encrypt_cmd = bg_cmd->add_subcommand("encrypt", "Encrypt a bit string");
  encrypt_cmd->add_option("--key", bg.key, "Public key file")->required();
  encrypt_cmd->add_option("--message", bg.message, "Plaintext bits, e.g. 101");
  encrypt_cmd->add_option("--in", bg.in, "File holding plaintext bits");
  encrypt_cmd->add_option("--seed", bg.seed, "64-bit seed for the randomizer r")->required();
  encrypt_cmd->add_flag("--chaotic", bg.chaotic, "Cumulative-XOR variant with S0");
  encrypt_cmd->add_option("--out", bg.out, "Ciphertext file (default: standard output)");
  auto* decrypt_cmd = bg_cmd->add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt_cmd->add_option("--key", bg.key, "Secret key file")->required();
  decrypt_cmd->add_option("--in", bg.in, "Ciphertext file")->required();
  decrypt_cmd->add_flag("--chaotic", bg.chaotic, "Cumulative-XOR variant with S0");
  decrypt_cmd->add_option("--out", bg.out, "Plaintext file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (gen_cmd->parsed()) return run_gen(gen);
    if (analyze_cmd->parsed()) return run_analyze(analyze);
    if (kernel_cmd->parsed()) return run_kernel(kernel);
    if (battery_cmd->parsed()) return run_battery_cmd(battery);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (keygen_cmd->parsed()) return run_bg_keygen(bg);
    if (encrypt_cmd->parsed()) return run_bg_encrypt(bg);
    if (decrypt_cmd->parsed()) return run_bg_decrypt(bg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
