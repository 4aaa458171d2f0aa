#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "margo/complex.hpp"
#include "margo/space.hpp"

namespace margo {

/// Largest n for which characters are materialized (2^n dense entries).
inline constexpr int kMaxCharacterVariables = 20;

/// e_B(x) = (-1)^{#{i in B : x_i = 1}} over {0,1}^n, lexicographic order.
struct CharacterVector {
  Subset set;
  Counts values;
};

/// Signed integer vector over configurations, m = m+ - m-.
class Move {
 public:
  Move() = default;
  explicit Move(Counts entries) : entries_(std::move(entries)) {}

  const Counts& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Counts positive() const;
  Counts negative() const;
  /// Sum of the positive part.
  std::int64_t degree() const;
  bool is_zero() const;

  friend bool operator==(const Move&, const Move&) = default;

 private:
  Counts entries_;
};

struct MoveSupports {
  std::vector<std::size_t> positive;
  std::vector<std::size_t> negative;
  std::int64_t degree = 0;
};

CharacterVector character(Subset b, int n);
/// Throws std::domain_error for non-binary spaces.
CharacterVector character(Subset b, const ConfigSpace& space);

/// e_B for every non-face B, in (cardinality, lexicographic) order. Each
/// vector is checked against A_Delta before it is returned.
std::vector<CharacterVector> kernel_basis(const SimplicialComplex& complex);
std::vector<CharacterVector> kernel_basis(const SimplicialComplex& complex, const ConfigSpace& space);

/// The interval move for [G, N] supported on the cylinder {X_{N\G} = y},
/// divided by 2^{n-|G|}: e_G(x_G) on the cylinder, 0 elsewhere.
Move interval_move(int n, Subset g, const LocalConfig& y);

/// The literal signed character sum over all B containing G, evaluated
/// term by term. Equals 2^{n-|G|} * interval_move(n, g, y).
Counts interval_move_sum(int n, Subset g, const LocalConfig& y);

/// interval_move for every y in X_{N\G}, lexicographic in y.
std::vector<Move> interval_moves(int n, Subset g);

/// Sum of e_B over the cylinder {X_C = y_C} of {0,1}^n, by direct summation.
std::int64_t character_cylinder_sum(int n, Subset b, Subset c, const LocalConfig& y);

MoveSupports move_supports(const Move& m);

}  // namespace margo
