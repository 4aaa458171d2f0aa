#pragma once

#include <optional>
#include <span>
#include <vector>

#include "margo/complex.hpp"
#include "margo/fiber.hpp"
#include "margo/lp.hpp"
#include "margo/space.hpp"

namespace margo {

/// Verdict on whether conv{A_y : y in Y} is a face of the marginal polytope,
/// with an exact certificate either way.
///
/// Not a face: `lambda` is a convex combination of all columns with the
/// barycenter of A_Y as its image and positive mass outside Y.
///
/// Face: h(x) = <normal, A_x> + offset vanishes on Y and is >= 1 on every
/// other configuration, so {h = 0} cuts out exactly the points of Y.
struct FacialityCertificate {
  std::vector<std::size_t> query;
  bool is_face = false;
  /// Optimum of  max sum_{x not in Y} lambda_x  over the barycenter LP.
  Rational optimum;
  std::vector<Rational> lambda;
  std::vector<Rational> normal;
  Rational offset;
};

struct NeighborlinessReport {
  /// Every Y with |Y| <= k was verified facial.
  int k = 0;
  /// True when the sweep stopped at k_max without finding a witness.
  bool limit_reached = false;
  /// The lexicographically least non-facial Y of size k + 1.
  std::optional<FacialityCertificate> witness;
  std::size_t subsets_tested = 0;
};

/// Y is a set of configuration indices; duplicates are ignored.
FacialityCertificate is_facial(const SimplicialComplex& complex, const ConfigSpace& space,
                               std::span<const std::size_t> y);

/// Re-checks a certificate in exact arithmetic against A_Delta.
bool verify_certificate(const SimplicialComplex& complex, const ConfigSpace& space,
                        const FacialityCertificate& cert);

/// Sweeps |Y| = 1, 2, ... up to k_max, testing every subset of each size in
/// lexicographic order, and stops at the first non-facial one.
NeighborlinessReport neighborliness(const SimplicialComplex& complex, const ConfigSpace& space, int k_max,
                                    const SearchLimits& limits = {});

/// Affine dimension of the marginal polytope: rank of {A_x - A_{x0}}.
int polytope_dimension(const SimplicialComplex& complex, const ConfigSpace& space);

}  // namespace margo
