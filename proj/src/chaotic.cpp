#include "ciprng/chaotic.hpp"

#include <istream>
#include <ostream>
#include <string>

namespace ciprng {

namespace {

void check_state(const BooleanFunction& f, StateWord x, const char* what) {
  if ((x & ~f.mask()) != 0) throw DomainError(std::string(what) + ": state has bits above dimension");
}

}  // namespace

BooleanFunction::BooleanFunction(unsigned n, std::vector<StateWord> table) : n_(n), table_(std::move(table)) {
  if (n == 0) throw DomainError("BooleanFunction: dimension must be at least 1");
  if (n > kMaxDim) throw ResourceError("BooleanFunction: truth tables are limited to n <= 20");
  if (table_.size() != (std::size_t{1} << n)) throw DomainError("BooleanFunction: table must have 2^n entries");
  const StateWord m = mask();
  for (StateWord v : table_) {
    if ((v & ~m) != 0) throw DomainError("BooleanFunction: table entry exceeds 2^n - 1");
  }
}

BooleanFunction BooleanFunction::identity(unsigned n) {
  if (n == 0 || n > kMaxDim) return BooleanFunction(n, {});
  std::vector<StateWord> t(std::size_t{1} << n);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = x;
  return BooleanFunction(n, std::move(t));
}

BooleanFunction BooleanFunction::negation(unsigned n) {
  if (n == 0 || n > kMaxDim) return BooleanFunction(n, {});
  std::vector<StateWord> t(std::size_t{1} << n);
  const StateWord m = low_mask(n);
  for (std::size_t x = 0; x < t.size(); ++x) t[x] = ~static_cast<StateWord>(x) & m;
  return BooleanFunction(n, std::move(t));
}

BooleanFunction BooleanFunction::constant(unsigned n, StateWord value) {
  if (n == 0 || n > kMaxDim) return BooleanFunction(n, {});
  return BooleanFunction(n, std::vector<StateWord>(std::size_t{1} << n, value));
}

StateWord apply_single(const BooleanFunction& f, unsigned i, StateWord x) {
  if (i < 1 || i > f.dim()) throw DomainError("apply_single: cell index out of [1, n]");
  check_state(f, x, "apply_single");
  const StateWord bit = StateWord{1} << (i - 1);
  return (x & ~bit) | (f(x) & bit);
}

StateWord apply_subset(const BooleanFunction& f, SubsetMask p, StateWord x) {
  if ((p & ~f.mask()) != 0) throw DomainError("apply_subset: subset has cells above dimension");
  check_state(f, x, "apply_subset");
  return (x & ~p) | (f(x) & p);
}

std::vector<StateWord> iterate(const BooleanFunction& f, StateWord x0, std::span<const SubsetMask> strategy) {
  std::vector<StateWord> traj;
  traj.reserve(strategy.size() + 1);
  traj.push_back(x0);
  StateWord x = x0;
  for (SubsetMask s : strategy) {
    x = apply_subset(f, s, x);
    traj.push_back(x);
  }
  return traj;
}

Algorithm1Result algorithm1_next(const BooleanFunction& f, std::uint64_t b, StateWord x0,
                                 XorShift32& strategy_rng, XorShift32& length_rng) {
  if (b == 0) throw DomainError("algorithm1_next: b must be at least 1");
  check_state(f, x0, "algorithm1_next");
  const std::uint64_t k = b + uniform_range(length_rng, b);
  StateWord x = x0;
  // Loop bound follows the pseudocode "for i = 0..k", i.e. k + 1 updates.
  for (std::uint64_t i = 0; i <= k; ++i) {
    const auto cell = static_cast<unsigned>(uniform_range(strategy_rng, f.dim()));
    x = apply_single(f, cell, x);
  }
  return {x, k + 1};
}

BooleanFunction read_boolean_function(std::istream& in) {
  std::string line;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      line = line.substr(first);
      return true;
    }
    return false;
  };
  if (!next_line()) throw DecodeError("boolean function: missing dimension line");
  // Only whitespace or a trailing comment may follow a number.
  auto rest_is_blank = [&](std::size_t pos) {
    const auto next = line.find_first_not_of(" \t\r", pos);
    return next == std::string::npos || line[next] == '#';
  };
  unsigned long n = 0;
  try {
    std::size_t pos = 0;
    n = std::stoul(line, &pos, 10);
    if (!rest_is_blank(pos)) throw DecodeError("");
  } catch (const std::exception&) {
    throw DecodeError("boolean function: dimension is not an integer");
  }
  if (n == 0 || n > BooleanFunction::kMaxDim) throw DecodeError("boolean function: dimension out of range");
  std::vector<StateWord> table(std::size_t{1} << n);
  for (auto& entry : table) {
    if (!next_line()) throw DecodeError("boolean function: expected 2^n table lines");
    try {
      std::size_t pos = 0;
      entry = std::stoull(line, &pos, 16);
      if (!rest_is_blank(pos)) throw DecodeError("");
    } catch (const std::exception&) {
      throw DecodeError("boolean function: bad hexadecimal entry '" + line + "'");
    }
  }
  if (next_line()) throw DecodeError("boolean function: trailing data after table");
  try {
    return BooleanFunction(static_cast<unsigned>(n), std::move(table));
  } catch (const DomainError& e) {
    throw DecodeError(e.what());
  }
}

void write_boolean_function(std::ostream& out, const BooleanFunction& f) {
  out << f.dim() << '\n';
  for (StateWord v : f.table()) out << std::hex << v << std::dec << '\n';
  if (!out) throw IoError("boolean function: write failed");
}

}  // namespace ciprng
