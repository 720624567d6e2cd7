#include "ciprng/security_reduction.hpp"

#include "ciprng/errors.hpp"

namespace ciprng {

namespace {

std::uint64_t width_mask(unsigned width) {
  if (width == 0 || width > 64) throw DomainError("block string: width must be 1..64");
  return width == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
}

void check_blocks(const BlockString& s, std::uint64_t word) {
  const std::uint64_t mask = width_mask(s.width);
  if ((word & ~mask) != 0) throw DomainError("block string: word wider than block width");
  for (std::uint64_t b : s.blocks) {
    if ((b & ~mask) != 0) throw DomainError("block string: block wider than block width");
  }
}

}  // namespace

BlockString construct_X(std::uint64_t x0, std::uint64_t s0, const BlockString& h_blocks) {
  check_blocks(h_blocks, x0 | s0);
  if (h_blocks.blocks.empty()) throw DomainError("construct_X: need at least one block");
  BlockString out{h_blocks.width, std::vector<std::uint64_t>(h_blocks.blocks.size())};
  std::uint64_t stream = 0;  // S_1 ^ ... ^ S_j
  for (std::size_t j = 0; j < h_blocks.blocks.size(); ++j) {
    stream ^= h_blocks.blocks[j];
    out.blocks[j] = x0 ^ s0 ^ stream;
  }
  return out;
}

BlockString phi_y(std::uint64_t y, const BlockString& w) {
  check_blocks(w, y);
  BlockString z{w.width, {}};
  z.blocks.reserve(w.blocks.size());
  std::uint64_t acc = y;
  for (std::uint64_t b : w.blocks) {
    acc ^= b;
    z.blocks.push_back(acc);
  }
  return z;
}

BlockString phi_y_inverse(std::uint64_t y, const BlockString& z) {
  check_blocks(z, y);
  BlockString w{z.width, {}};
  w.blocks.reserve(z.blocks.size());
  std::uint64_t prev = y;
  for (std::uint64_t b : z.blocks) {
    w.blocks.push_back(b ^ prev);
    prev = b;
  }
  return w;
}

bool distinguisher_wrapper(const Distinguisher& d, const BlockString& w,
                           const std::function<std::uint64_t()>& y_source) {
  const std::uint64_t y = y_source() & width_mask(w.width);
  return d(phi_y(y, w));
}

}  // namespace ciprng
