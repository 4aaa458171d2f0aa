#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace margo {

/// A subset of the ground set {1,...,n}, stored as a bitmask with element i
/// at bit i-1. Up to 32 elements.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr explicit Subset(std::uint32_t bits) : bits_(bits) {}

  /// Builds a subset from 1-based indices; throws std::invalid_argument
  /// naming the offending index when it is outside 1..n.
  static Subset from_one_based(std::span<const int> indices, int n);
  static Subset from_one_based(std::initializer_list<int> indices, int n) {
    return from_one_based(std::span<const int>(indices.begin(), indices.size()), n);
  }
  static constexpr Subset full(int n) {
    return Subset(n >= 32 ? ~0u : ((1u << n) - 1u));
  }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  /// 0-based membership test.
  constexpr bool contains(int i) const { return (bits_ >> i) & 1u; }
  constexpr bool is_subset_of(Subset other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr Subset with(int i) const { return Subset(bits_ | (1u << i)); }
  constexpr Subset without(int i) const { return Subset(bits_ & ~(1u << i)); }

  /// 0-based elements, ascending.
  std::vector<int> elements() const;
  /// 1-based elements, ascending.
  std::vector<int> one_based() const;
  /// "{1,3}" style rendering.
  std::string to_string() const;

  friend constexpr Subset operator|(Subset a, Subset b) { return Subset(a.bits_ | b.bits_); }
  friend constexpr Subset operator&(Subset a, Subset b) { return Subset(a.bits_ & b.bits_); }
  friend constexpr bool operator==(Subset a, Subset b) = default;

 private:
  std::uint32_t bits_ = 0;
};

/// Complement of `s` inside {1,...,n}.
constexpr Subset complement(Subset s, int n) {
  return Subset(Subset::full(n).bits() & ~s.bits());
}

/// Strict weak order: smaller cardinality first, then lexicographic on the
/// ascending element lists. Every enumeration in the library uses it.
bool cardinality_lex_less(Subset a, Subset b);

/// All k-subsets of {1..n} in lexicographic order.
std::vector<Subset> subsets_of_size(int n, int k);

/// All subsets of {1..n} in (cardinality, lexicographic) order.
std::vector<Subset> all_subsets(int n);

/// Calls `visit(indices)` for every k-subset of {0..m-1} in lexicographic
/// order; stops early when `visit` returns false.
template <class Visit>
void for_each_combination(std::size_t m, std::size_t k, Visit&& visit) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(std::span<const std::size_t>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace margo
