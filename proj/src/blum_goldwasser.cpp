#include "ciprng/blum_goldwasser.hpp"

#include <bit>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "ciprng/errors.hpp"
#include "ciprng/modarith.hpp"

namespace ciprng {

unsigned bg_block_bits(std::uint64_t n) noexcept {
  // ⌊log2 y⌋ = ⌊log2 ⌊y⌋⌋ for y >= 1, so both logarithms reduce to bit widths.
  if (n < 4) return 0;
  const unsigned log_n = static_cast<unsigned>(std::bit_width(n)) - 1;
  return static_cast<unsigned>(std::bit_width(log_n)) - 1;
}

BgKeyPair bg_key_pair(std::uint64_t p, std::uint64_t q, std::uint64_t s0) {
  if (p == q) throw DomainError("bg: p and q must differ");
  for (std::uint64_t v : {p, q}) {
    if (!is_prime(v)) throw DomainError("bg: " + std::to_string(v) + " is not prime");
    if (v % 4 != 3) throw DomainError("bg: " + std::to_string(v) + " is not congruent to 3 mod 4");
  }
  if (static_cast<uint128>(p) * q >> 64 != 0) throw DomainError("bg: modulus exceeds 64 bits");
  BgKeyPair key{p * q, s0, {p, q}};
  const unsigned bits = bg_block_bits(key.n);
  if (bits == 0) throw DomainError("bg: modulus too small");
  if (s0 >> bits != 0) throw DomainError("bg: S0 must be below 2^block_bits");
  return key;
}

BgKeyPair bg_keygen(SeedExpander& rng, unsigned prime_bits) {
  if (prime_bits < 5 || prime_bits > 32) throw DomainError("bg keygen: prime size must be 5..32 bits");
  const std::uint64_t lo = std::uint64_t{1} << (prime_bits - 1);
  auto draw_prime = [&]() {
    for (;;) {
      const std::uint64_t v = lo + rng.below(lo);
      if (v % 4 == 3 && is_prime(v)) return v;
    }
  };
  const std::uint64_t p = draw_prime();
  std::uint64_t q = draw_prime();
  while (q == p) q = draw_prime();
  const unsigned bits = bg_block_bits(p * q);
  return bg_key_pair(p, q, rng.below(std::uint64_t{1} << bits));
}

std::uint64_t draw_coprime_r(std::uint64_t n, SeedExpander& rng) {
  for (;;) {
    const std::uint64_t r = 1 + rng.below(n - 1);
    if (std::gcd(r, n) == 1) return r;
  }
}

namespace {

std::uint64_t initial_state(std::uint64_t n, std::uint64_t r) {
  if (n < 4) throw DomainError("bg: modulus too small");
  if (r < 1 || r > n) throw DomainError("bg: r must lie in [1, N]");
  if (std::gcd(r, n) != 1) throw KeyLeakError("bg: r shares a factor with N");
  return mulmod(r, r, n);
}

void check_ciphertext(const BgSecretKey& key, const BgCiphertext& ct) {
  const std::uint64_t n = bg_key_pair(key.p, key.q).n;
  if (ct.y >= n) throw DecodeError("bg: y is not reduced modulo N");
}

}  // namespace

BgSeedRecovery bg_recover_seed(const BgSecretKey& key, std::uint64_t y, std::size_t length) {
  const std::uint64_t n = bg_key_pair(key.p, key.q).n;
  if (y >= n) throw DecodeError("bg: y is not reduced modulo N");
  const std::uint64_t p = key.p, q = key.q;
  // y is a unit, so the exponents ((p+1)/4)^L may be reduced mod p-1.
  const std::uint64_t ep = modpow((p + 1) / 4, length, p - 1);
  const std::uint64_t eq = modpow((q + 1) / 4, length, q - 1);
  BgSeedRecovery rec;
  rec.r_p = modpow(y, ep, p);
  rec.r_q = modpow(y, eq, q);
  const std::uint64_t cp = mulmod(q, modinv(q % p, p), n);
  const std::uint64_t cq = mulmod(p, modinv(p % q, q), n);
  rec.x0 = (mulmod(cp, rec.r_p, n) + mulmod(cq, rec.r_q, n)) % n;
  return rec;
}

BgCiphertext bg_encrypt(std::uint64_t n, std::span<const std::uint8_t> message, std::uint64_t r) {
  std::uint64_t x = initial_state(n, r);
  BgCiphertext ct;
  ct.unit_bits = 1;
  ct.c.reserve(message.size());
  for (std::uint8_t bit : message) {
    if (bit > 1) throw DomainError("bg: message elements must be bits");
    ct.c.push_back(bit ^ (x & 1));
    x = mulmod(x, x, n);
  }
  ct.y = x;
  return ct;
}

std::vector<std::uint8_t> bg_decrypt(const BgSecretKey& key, const BgCiphertext& ct) {
  check_ciphertext(key, ct);
  if (ct.unit_bits != 1) throw DecodeError("bg: classic ciphertext must use 1-bit units");
  const std::uint64_t n = key.p * key.q;
  std::uint64_t x = bg_recover_seed(key, ct.y, ct.c.size()).x0;
  std::vector<std::uint8_t> m;
  m.reserve(ct.c.size());
  for (std::uint64_t c : ct.c) {
    if (c > 1) throw DecodeError("bg: ciphertext units must be bits");
    m.push_back(static_cast<std::uint8_t>(c ^ (x & 1)));
    x = mulmod(x, x, n);
  }
  return m;
}

BgCiphertext cbg_encrypt(std::uint64_t s0, std::uint64_t n, std::span<const std::uint64_t> blocks,
                         std::uint64_t r) {
  const unsigned bits = bg_block_bits(n);
  std::uint64_t x = initial_state(n, r);
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  if ((s0 & ~mask) != 0) throw DomainError("cbg: S0 must be below 2^block_bits");
  BgCiphertext ct;
  ct.unit_bits = bits;
  ct.c.reserve(blocks.size());
  std::uint64_t cumulative = 0;
  for (std::uint64_t m : blocks) {
    if ((m & ~mask) != 0) throw DomainError("cbg: block exceeds block size");
    cumulative ^= x & mask;
    ct.c.push_back(m ^ cumulative ^ s0);
    x = mulmod(x, x, n);
  }
  ct.y = x;
  return ct;
}

std::vector<std::uint64_t> cbg_decrypt(const BgSecretKey& key, std::uint64_t s0, const BgCiphertext& ct) {
  check_ciphertext(key, ct);
  const std::uint64_t n = key.p * key.q;
  const unsigned bits = bg_block_bits(n);
  if (ct.unit_bits != bits) throw DecodeError("cbg: unit size does not match the key");
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  std::uint64_t x = bg_recover_seed(key, ct.y, ct.c.size()).x0;
  std::vector<std::uint64_t> m;
  m.reserve(ct.c.size());
  std::uint64_t cumulative = 0;
  for (std::uint64_t c : ct.c) {
    if ((c & ~mask) != 0) throw DecodeError("cbg: ciphertext unit exceeds block size");
    cumulative ^= x & mask;
    m.push_back(c ^ cumulative ^ s0);
    x = mulmod(x, x, n);
  }
  return m;
}

std::vector<std::uint64_t> pack_blocks(std::span<const std::uint8_t> bits, unsigned block_bits) {
  if (block_bits == 0 || block_bits > 64) throw DomainError("pack_blocks: block size must be 1..64");
  if (bits.size() % block_bits != 0) {
    throw PaddingError("message length " + std::to_string(bits.size()) + " is not a multiple of " +
                       std::to_string(block_bits) + " bits");
  }
  std::vector<std::uint64_t> blocks(bits.size() / block_bits, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw DomainError("pack_blocks: elements must be bits");
    blocks[i / block_bits] = (blocks[i / block_bits] << 1) | bits[i];
  }
  return blocks;
}

std::vector<std::uint8_t> unpack_blocks(std::span<const std::uint64_t> blocks, unsigned block_bits) {
  std::vector<std::uint8_t> bits;
  bits.reserve(blocks.size() * block_bits);
  for (std::uint64_t b : blocks) {
    for (unsigned k = block_bits; k-- > 0;) bits.push_back(static_cast<std::uint8_t>((b >> k) & 1));
  }
  return bits;
}

namespace {

std::map<std::string, std::string> read_fields(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string name;
    if (!(ls >> name) || name[0] == '#') continue;
    std::string rest;
    std::getline(ls, rest);
    const auto first = rest.find_first_not_of(" \t");
    fields[name] = first == std::string::npos ? "" : rest.substr(first);
  }
  return fields;
}

std::uint64_t parse_u64(const std::string& text, int base, const char* what) {
  try {
    std::size_t pos = 0;
    const std::uint64_t v = std::stoull(text, &pos, base);
    if (text.find_first_not_of(" \t\r", pos) != std::string::npos) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw DecodeError(std::string("bad value for ") + what + ": '" + text + "'");
  }
}

}  // namespace

void write_public_key(std::ostream& out, const BgKeyPair& key) {
  out << "N " << key.n << "\nS0 " << key.s0 << '\n';
  if (!out) throw IoError("bg: failed to write public key");
}

void write_secret_key(std::ostream& out, const BgKeyPair& key) {
  out << "p " << key.secret.p << "\nq " << key.secret.q << "\nS0 " << key.s0 << '\n';
  if (!out) throw IoError("bg: failed to write secret key");
}

BgKeyPair read_key(std::istream& in) {
  const auto fields = read_fields(in);
  BgKeyPair key;
  auto get = [&](const char* name) -> std::uint64_t {
    const auto it = fields.find(name);
    return it == fields.end() ? 0 : parse_u64(it->second, 10, name);
  };
  key.n = get("N");
  key.s0 = get("S0");
  key.secret = {get("p"), get("q")};
  if (key.secret.p != 0 || key.secret.q != 0) {
    try {
      const BgKeyPair checked = bg_key_pair(key.secret.p, key.secret.q, key.s0);
      if (key.n != 0 && key.n != checked.n) throw DecodeError("bg key: N does not match p*q");
      key.n = checked.n;
    } catch (const DomainError& e) {
      throw DecodeError(std::string("bg key: ") + e.what());
    }
  }
  if (key.n == 0) throw DecodeError("bg key: neither N nor (p, q) present");
  return key;
}

void write_ciphertext(std::ostream& out, const BgCiphertext& ct) {
  out << "L " << ct.c.size() << "\nunit_bits " << ct.unit_bits << "\nc";
  out << std::hex;
  for (std::uint64_t u : ct.c) out << ' ' << u;
  out << std::dec << "\ny " << ct.y << '\n';
  if (!out) throw IoError("bg: failed to write ciphertext");
}

BgCiphertext read_ciphertext(std::istream& in) {
  const auto fields = read_fields(in);
  for (const char* name : {"L", "unit_bits", "y"}) {
    if (!fields.contains(name)) throw DecodeError(std::string("ciphertext: missing field ") + name);
  }
  BgCiphertext ct;
  const std::uint64_t length = parse_u64(fields.at("L"), 10, "L");
  const std::uint64_t unit = parse_u64(fields.at("unit_bits"), 10, "unit_bits");
  if (unit == 0 || unit > 64) throw DecodeError("ciphertext: unit_bits out of range");
  ct.unit_bits = static_cast<unsigned>(unit);
  ct.y = parse_u64(fields.at("y"), 10, "y");
  if (const auto it = fields.find("c"); it != fields.end()) {
    std::istringstream units(it->second);
    std::string tok;
    while (units >> tok) ct.c.push_back(parse_u64(tok, 16, "c"));
  }
  if (ct.c.size() != length) throw DecodeError("ciphertext: L does not match the number of units");
  return ct;
}

}  // namespace ciprng
