#pragma once

#include <cstdint>

#include "ciprng/errors.hpp"

namespace ciprng {

__extension__ using uint128 = unsigned __int128;
__extension__ using int128 = __int128;

constexpr std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

/// a^e mod m by square-and-multiply; m >= 1.
constexpr std::uint64_t modpow(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  if (m == 0) throw DomainError("modpow: modulus must be positive");
  std::uint64_t result = 1 % m;
  a %= m;
  while (e != 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

/// a^{-1} mod m via the extended Euclidean algorithm.
constexpr std::uint64_t modinv(std::uint64_t a, std::uint64_t m) {
  if (m < 2) throw DomainError("modinv: modulus must be at least 2");
  int128 r0 = m, r1 = a % m;
  int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const int128 q = r0 / r1;
    const int128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    const int128 s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
  }
  if (r0 != 1) throw ArithmeticError("modinv: element is not invertible");
  if (s0 < 0) s0 += m;
  return static_cast<std::uint64_t>(s0);
}

/// Deterministic Miller-Rabin for 64-bit inputs.
constexpr bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = modpow(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace ciprng
