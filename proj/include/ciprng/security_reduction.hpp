#pragma once

// Constructive pieces of the argument that the cumulative-XOR post-treatment
// keeps a secure generator secure: the map X, the bijections φ_y and the
// wrapped distinguisher D'. Nothing here proves security; the asymptotic
// definition is not testable. These functions exist so that the identities
// the argument relies on can be checked exhaustively and by sampling.

#include <cstdint>
#include <functional>
#include <vector>

namespace ciprng {

/// k blocks of `width` bits each.
struct BlockString {
  unsigned width = 1;
  std::vector<std::uint64_t> blocks;

  friend bool operator==(const BlockString&, const BlockString&) = default;
};

/// Block j = x0 ^ S0 ^ S_1 ^ ... ^ S_j, for the generator output S_1..S_k.
BlockString construct_X(std::uint64_t x0, std::uint64_t s0, const BlockString& h_blocks);

/// Block j = y ^ w_1 ^ ... ^ w_j.
BlockString phi_y(std::uint64_t y, const BlockString& w);

/// w_1 = z_1 ^ y, w_j = z_j ^ z_{j-1}.
BlockString phi_y_inverse(std::uint64_t y, const BlockString& z);

using Distinguisher = std::function<bool(const BlockString&)>;

/// D'(w) = D(φ_y(w)) with y drawn from `y_source`.
bool distinguisher_wrapper(const Distinguisher& d, const BlockString& w,
                           const std::function<std::uint64_t()>& y_source);

}  // namespace ciprng
