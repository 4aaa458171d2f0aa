#pragma once

#include <gmpxx.h>

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace margo {

using Rational = mpq_class;

struct RationalMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rational& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
};

enum class LpStatus { Optimal, Infeasible };

class LpUnbounded : public std::domain_error {
 public:
  LpUnbounded() : std::domain_error("lp_solve: objective is unbounded") {}
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum;
  /// An optimal basic solution.
  std::vector<Rational> solution;
  /// Optimal dual multipliers y, one per equality row: y.A_j >= c_j for
  /// every column and y.b == optimum.
  std::vector<Rational> dual;
  std::size_t pivots = 0;
};

/// Exact two-phase primal simplex for  max c.x  s.t.  A x = b, x >= 0.
/// Pivoting follows Bland's smallest-index rule in both phases, so the
/// method terminates on degenerate problems. Throws LpUnbounded when the
/// objective has no finite maximum.
LpResult lp_solve(const RationalMatrix& a, std::span<const Rational> b, std::span<const Rational> c);

/// "p/q" or "p".
std::string to_string(const Rational& q);

}  // namespace margo
