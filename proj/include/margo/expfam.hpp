#pragma once

#include <span>
#include <vector>

#include "margo/characters.hpp"
#include "margo/complex.hpp"
#include "margo/polytope.hpp"
#include "margo/space.hpp"

namespace margo {

/// A probability vector over configurations in lexicographic order. This
/// module is the only floating-point code in the library.
struct Density {
  std::vector<double> p;
};

/// Validates nonnegativity and that the entries sum to 1 within `tol`.
Density make_density(std::vector<double> p, double tol = 1e-9);

/// p_theta(x) = exp(<theta, A_x>) / Z(theta), via log-sum-exp.
Density density(const SimplicialComplex& complex, const ConfigSpace& space, std::span<const double> theta);

/// log Z(theta).
double log_partition(const SimplicialComplex& complex, const ConfigSpace& space, std::span<const double> theta);

/// |prod p^{m+} - prod p^{m-}| <= tol for every move, with 0^0 = 1.
bool satisfies_binomials(const Density& p, std::span<const Move> moves, double tol);

/// Sum of the single-variable entropies minus the joint entropy (nats).
double multiinformation(const Density& p, const ConfigSpace& space);

/// theta = -scale * normal for a face certificate: the resulting densities
/// put mass at most |X| e^{-scale} outside the certified face.
std::vector<double> concentrating_parameters(const FacialityCertificate& face, double scale);

}  // namespace margo
