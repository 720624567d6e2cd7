#include "ciprng/xorlike.hpp"

namespace ciprng {

std::uint64_t uniform_range(XorShift32& rng, std::uint64_t k) {
  if (k == 0) throw DomainError("uniform_range: k must be positive");
  if (k > (std::uint64_t{1} << 32)) throw DomainError("uniform_range: k exceeds the 32-bit draw range");
  for (;;) {
    if (auto v = detail::accept_in_range(rng.next(), k, 32)) return *v;
  }
}

}  // namespace ciprng
