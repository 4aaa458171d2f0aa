#pragma once

#include <iosfwd>
#include <vector>

#include "margo/subset.hpp"

namespace margo {

/// A simplicial complex on {1,...,n} given by its facets.
///
/// Facets are kept inclusion-maximal, duplicate free and sorted in
/// (cardinality, lexicographic) order. That order is also the row-block order
/// of the marginal matrix. A complex with no facets at all is the void
/// complex, in which even the empty set is a non-face.
class SimplicialComplex {
 public:
  /// Normalizes a generator list to its inclusion-maximal members.
  static SimplicialComplex from_facets(int n, std::vector<Subset> generators);
  /// Same, from 1-based index lists. Out-of-range indices are rejected with
  /// the index and its generator position in the message.
  static SimplicialComplex from_generators(int n, const std::vector<std::vector<int>>& generators);

  int n() const { return n_; }
  const std::vector<Subset>& facets() const { return facets_; }

  bool is_face(Subset b) const;
  /// True when every subset of N is a face.
  bool is_full() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  SimplicialComplex(int n, std::vector<Subset> facets) : n_(n), facets_(std::move(facets)) {}

  int n_ = 0;
  std::vector<Subset> facets_;
};

/// Minimal cardinality g of a non-face. Throws std::domain_error when the
/// complex is the full power set. The void complex yields 0.
int min_nonface_cardinality(const SimplicialComplex& complex);

/// All non-faces in (cardinality, lexicographic) order.
std::vector<Subset> nonfaces(const SimplicialComplex& complex);

/// Inclusion-minimal non-faces in (cardinality, lexicographic) order.
/// Throws std::domain_error for the full power set.
std::vector<Subset> minimal_nonfaces(const SimplicialComplex& complex);

/// The complex of all subsets of N not containing G; its facets are
/// N \ {i} for i in G.
SimplicialComplex interval_complement(int n, Subset g);

/// All k-subsets of N as facets.
SimplicialComplex uniform_complex(int n, int k);

/// Text format: first line n, then one facet per non-empty line as
/// space-separated 1-based indices; '#' starts a comment.
SimplicialComplex read_complex(std::istream& in);
void write_complex(std::ostream& out, const SimplicialComplex& complex);

}  // namespace margo
