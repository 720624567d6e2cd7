#pragma once

// Blum-Goldwasser probabilistic encryption, bit-level, and the cumulative-XOR
// variant that masks blocks of ⌊log2 log2 N⌋ bits with b_0 ^ ... ^ b_i ^ S0.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ciprng/seed_expander.hpp"

namespace ciprng {

struct BgSecretKey {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
};

struct BgKeyPair {
  std::uint64_t n = 0;   ///< public modulus
  std::uint64_t s0 = 0;  ///< public mask of the chaotic variant (0 for classic use)
  BgSecretKey secret;
};

/// ⌊log2(log2(N))⌋, the number of low bits of each BBS state used per block.
unsigned bg_block_bits(std::uint64_t n) noexcept;

/// Validates p != q prime, both ≡ 3 (mod 4), and s0 < 2^{block bits}.
BgKeyPair bg_key_pair(std::uint64_t p, std::uint64_t q, std::uint64_t s0 = 0);

/// Random key with primes of `prime_bits` bits (5..32; smaller sizes have fewer than two primes = 3 mod 4) and a random S0.
BgKeyPair bg_keygen(SeedExpander& rng, unsigned prime_bits = 16);

/// Uniform r in [1, N) coprime to N.
std::uint64_t draw_coprime_r(std::uint64_t n, SeedExpander& rng);

struct BgCiphertext {
  unsigned unit_bits = 1;          ///< 1 for classic BG, block bits for the variant
  std::vector<std::uint64_t> c;    ///< masked units
  std::uint64_t y = 0;             ///< x_L
  friend bool operator==(const BgCiphertext&, const BgCiphertext&) = default;
};

/// Intermediate values of seed recovery.
struct BgSeedRecovery {
  std::uint64_t r_p = 0;
  std::uint64_t r_q = 0;
  std::uint64_t x0 = 0;
};

/// x0 from y = x0^{2^L} mod N via r_p = y^{((p+1)/4)^L} mod p, r_q likewise,
/// and CRT recombination.
BgSeedRecovery bg_recover_seed(const BgSecretKey& key, std::uint64_t y, std::size_t length);

/// Classic encryption of a bit string (one bit per element, values 0/1).
BgCiphertext bg_encrypt(std::uint64_t n, std::span<const std::uint8_t> message, std::uint64_t r);
std::vector<std::uint8_t> bg_decrypt(const BgSecretKey& key, const BgCiphertext& ct);

/// Variant: c_i = m_i ^ (b_0 ^ ... ^ b_i) ^ S0 on blocks of bg_block_bits(N) bits.
BgCiphertext cbg_encrypt(std::uint64_t s0, std::uint64_t n, std::span<const std::uint64_t> blocks,
                         std::uint64_t r);
std::vector<std::uint64_t> cbg_decrypt(const BgSecretKey& key, std::uint64_t s0, const BgCiphertext& ct);

/// Groups bits (first bit most significant) into blocks; throws PaddingError
/// unless the length is a multiple of block_bits.
std::vector<std::uint64_t> pack_blocks(std::span<const std::uint8_t> bits, unsigned block_bits);
std::vector<std::uint8_t> unpack_blocks(std::span<const std::uint64_t> blocks, unsigned block_bits);

// Text formats. Keys: "N <dec>" and "S0 <dec>" (public), "p <dec>", "q <dec>"
// and optionally "S0 <dec>" (secret). Ciphertext: "L <dec>", "unit_bits <dec>",
// "c <hex> <hex> ...", "y <dec>".
void write_public_key(std::ostream& out, const BgKeyPair& key);
void write_secret_key(std::ostream& out, const BgKeyPair& key);
/// Reads either key file; fields absent from the file are left zero.
BgKeyPair read_key(std::istream& in);
void write_ciphertext(std::ostream& out, const BgCiphertext& ct);
BgCiphertext read_ciphertext(std::istream& in);

}  // namespace ciprng
