#pragma once

#include <iosfwd>
#include <vector>

#include "margo/characters.hpp"
#include "margo/complex.hpp"
#include "margo/space.hpp"

namespace margo {

/// Surjections phi_i : {0..q_i-1} -> {0,1}, one lookup table per variable.
class Collapsing {
 public:
  /// Throws std::invalid_argument if any map is not onto {0,1}.
  explicit Collapsing(std::vector<std::vector<int>> maps);

  const std::vector<std::vector<int>>& maps() const { return maps_; }
  int n() const { return static_cast<int>(maps_.size()); }
  int apply(int var, int value) const { return maps_[var][value]; }
  const ConfigSpace& source() const { return source_; }
  const ConfigSpace& target() const { return target_; }
  /// Binary index phi(x) for a source index x.
  std::size_t image(std::size_t x) const { return image_[x]; }

 private:
  std::vector<std::vector<int>> maps_;
  ConfigSpace source_;
  ConfigSpace target_;
  std::vector<std::size_t> image_;
};

Config collapse_config(const Collapsing& c, const Config& x);

/// Phi(u)(z) = sum of u over phi^{-1}(z).
ContingencyTable collapse_table(const Collapsing& c, const ContingencyTable& u);

/// Evaluates both sides of the collapsing/marginalization identity for
/// (B, z_B) independently and compares them.
bool verify_phi_identity(const Collapsing& c, const ContingencyTable& u, Subset b, const LocalConfig& z);

/// Requires pi(u) == pi(v) on the source space (std::invalid_argument
/// "inputs not in same fiber" otherwise); returns whether the binary
/// marginals of Phi(u), Phi(v) agree.
bool collapse_commutes(const SimplicialComplex& complex, const Collapsing& c,
                       const ContingencyTable& u, const ContingencyTable& v);

/// Phi(m+) - Phi(m-) on the binary space. May be zero.
Move collapse_move(const Collapsing& c, const Move& m);

/// Every collapsing of `space`, in lexicographic order of the per-variable
/// tables. There are prod(2^{q_i} - 2) of them.
std::vector<Collapsing> all_collapsings(const ConfigSpace& space);

/// One line per variable: "i: a_0 a_1 ... a_{q_i-1}", i 1-based.
Collapsing read_collapsing(std::istream& in);
void write_collapsing(std::ostream& out, const Collapsing& c);

}  // namespace margo
