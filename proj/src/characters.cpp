#include "margo/characters.hpp"

#include <bit>
#include <stdexcept>
#include <string>

#include "margo/kernels.hpp"

namespace margo {
namespace {

void check_binary_n(int n) {
  if (n < 1 || n > kMaxCharacterVariables)
    throw std::invalid_argument("characters: n must be in 1.." + std::to_string(kMaxCharacterVariables));
}

void check_binary(const ConfigSpace& space) {
  if (!space.is_binary()) throw std::domain_error("characters defined for binary spaces only");
  check_binary_n(space.n());
}

// Bitmask of x with variable i at bit i. Lexicographic indices put variable 1
// at the most significant bit, so the index has to be reversed.
std::uint32_t ones_mask(std::size_t index, int n) {
  std::uint32_t m = 0;
  for (int i = 0; i < n; ++i)
    if ((index >> (n - 1 - i)) & 1u) m |= 1u << i;
  return m;
}

std::int64_t parity_sign(std::uint32_t bits) { return (std::popcount(bits) & 1) ? -1 : 1; }

// Bitmask (variable i at bit i) of the ones of y, a local config on `b`.
std::uint32_t local_ones(Subset b, const LocalConfig& y) {
  auto elems = b.elements();
  std::uint32_t m = 0;
  for (std::size_t k = 0; k < elems.size(); ++k)
    if (y[k] == 1) m |= 1u << elems[k];
  return m;
}

void check_local_binary(int n, Subset b, const LocalConfig& y) {
  ConfigSpace::binary(n).check_local(y, b);
}

}  // namespace

Counts Move::positive() const {
  Counts p(entries_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = entries_[i] > 0 ? entries_[i] : 0;
  return p;
}

Counts Move::negative() const {
  Counts p(entries_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = entries_[i] < 0 ? -entries_[i] : 0;
  return p;
}

std::int64_t Move::degree() const {
  std::int64_t d = 0;
  for (auto v : entries_)
    if (v > 0) d += v;
  return d;
}

bool Move::is_zero() const { return kernels::all_zero(entries_); }

CharacterVector character(Subset b, int n) {
  check_binary_n(n);
  if (!b.is_subset_of(Subset::full(n)))
    throw std::invalid_argument("character: " + b.to_string() + " not inside 1.." + std::to_string(n));
  const std::size_t size = std::size_t{1} << n;
  CharacterVector e{b, Counts(size)};
  for (std::size_t x = 0; x < size; ++x) e.values[x] = parity_sign(ones_mask(x, n) & b.bits());
  return e;
}

CharacterVector character(Subset b, const ConfigSpace& space) {
  check_binary(space);
  return character(b, space.n());
}

std::vector<CharacterVector> kernel_basis(const SimplicialComplex& complex) {
  return kernel_basis(complex, ConfigSpace::binary(complex.n()));
}

std::vector<CharacterVector> kernel_basis(const SimplicialComplex& complex, const ConfigSpace& space) {
  check_binary(space);
  const auto a = marginal_matrix(complex, space);
  std::vector<CharacterVector> basis;
  for (Subset b : nonfaces(complex)) {
    auto e = character(b, space.n());
    if (!kernel_check(a, e.values))
      throw std::logic_error("kernel_basis: e_" + b.to_string() + " is not in the kernel");
    basis.push_back(std::move(e));
  }
  return basis;
}

Move interval_move(int n, Subset g, const LocalConfig& y) {
  check_binary_n(n);
  if (g.empty()) throw std::invalid_argument("interval_move: G must be nonempty");
  const Subset rest = complement(g, n);
  check_local_binary(n, rest, y);
  const std::uint32_t y_ones = local_ones(rest, y);
  const std::size_t size = std::size_t{1} << n;
  Counts m(size, 0);
  for (std::size_t x = 0; x < size; ++x) {
    const std::uint32_t ones = ones_mask(x, n);
    if ((ones & rest.bits()) == y_ones) m[x] = parity_sign(ones & g.bits());
  }
  return Move(std::move(m));
}

Counts interval_move_sum(int n, Subset g, const LocalConfig& y) {
  check_binary_n(n);
  if (g.empty()) throw std::invalid_argument("interval_move_sum: G must be nonempty");
  const Subset rest = complement(g, n);
  check_local_binary(n, rest, y);
  const std::uint32_t y_ones = local_ones(rest, y);
  Counts sum(std::size_t{1} << n, 0);
  // B ranges over the interval [G, N], i.e. B = G | S for S inside N \ G.
  const std::uint32_t r = rest.bits();
  std::uint32_t s = 0;
  do {
    const Subset b(g.bits() | s);
    const std::int64_t sign = parity_sign(b.bits() & y_ones);
    kernels::axpy(sign, character(b, n).values, sum);
    s = (s - r) & r;
  } while (s != 0);
  return sum;
}

std::vector<Move> interval_moves(int n, Subset g) {
  check_binary_n(n);
  const Subset rest = complement(g, n);
  const std::size_t count = std::size_t{1} << rest.size();
  const auto space = ConfigSpace::binary(n);
  std::vector<Move> moves;
  moves.reserve(count);
  for (std::size_t k = 0; k < count; ++k) moves.push_back(interval_move(n, g, space.local_config(k, rest)));
  return moves;
}

std::int64_t character_cylinder_sum(int n, Subset b, Subset c, const LocalConfig& y) {
  check_binary_n(n);
  if (!b.is_subset_of(Subset::full(n)))
    throw std::invalid_argument("character_cylinder_sum: B outside 1.." + std::to_string(n));
  const auto space = ConfigSpace::binary(n);
  const auto e = character(b, n);
  std::int64_t total = 0;
  for (std::size_t x : cylinder(space, c, y)) total += e.values[x];
  return total;
}

MoveSupports move_supports(const Move& m) {
  MoveSupports s;
  const auto& v = m.entries();
  for (std::size_t x = 0; x < v.size(); ++x) {
    if (v[x] > 0) {
      s.positive.push_back(x);
      s.degree += v[x];
    } else if (v[x] < 0) {
      s.negative.push_back(x);
    }
  }
  return s;
}

}  // namespace margo
