#include "margo/lp.hpp"

#include <optional>

namespace margo {
namespace {

// Dense tableau over [original columns | artificial columns | rhs], with the
// reduced-cost row kept alongside and pivoted like any other row.
class Tableau {
 public:
  Tableau(const RationalMatrix& a, std::span<const Rational> b)
      : m_(a.rows), n_(a.cols), width_(a.cols + a.rows + 1), t_(m_ * width_), sign_(m_, 1), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (b[i] < 0) sign_[i] = -1;
      for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign_[i] * a.at(i, j);
      at(i, n_ + i) = 1;
      at(i, rhs()) = sign_[i] * b[i];
      basis_[i] = n_ + i;
    }
  }

  // Installs the reduced-cost row for maximizing cost.x; cost has one entry
  // per column (original and artificial).
  void set_objective(const std::vector<Rational>& cost) {
    cost_ = cost;
    reduced_.assign(width_, 0);
    for (std::size_t j = 0; j < width_ - 1; ++j) reduced_[j] = cost[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(at(i, j)) != 0) reduced_[j] -= cb * at(i, j);
    }
  }

  // Runs Bland pivots over columns [0, allowed). Returns false if unbounded.
  bool optimize(std::size_t allowed, std::size_t& pivots) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j)
        if (sgn(reduced_[j]) > 0) {
          enter = j;
          break;
        }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(at(i, *enter)) <= 0) continue;
        Rational ratio = at(i, rhs()) / at(i, *enter);
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
      ++pivots;
    }
  }

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = at(row, col);
    for (std::size_t j = 0; j < width_; ++j)
      if (sgn(at(row, j)) != 0) at(row, j) /= p;
    auto eliminate = [&](Rational* target) {
      if (sgn(target[col]) == 0) return;
      const Rational factor = target[col];
      for (std::size_t j = 0; j < width_; ++j)
        if (sgn(at(row, j)) != 0) target[j] -= factor * at(row, j);
    };
    for (std::size_t i = 0; i < m_; ++i)
      if (i != row) eliminate(&t_[i * width_]);
    eliminate(reduced_.data());
    basis_[row] = col;
  }

  // Pivots artificial variables out of the basis where an original column
  // can replace them. Rows where none can are redundant and keep their
  // artificial at value zero; their entries in original columns stay zero.
  void expel_artificials(std::size_t& pivots) {
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(at(i, j)) != 0) {
          pivot(i, j);
          ++pivots;
          break;
        }
    }
  }

  Rational value() const {
    Rational v = 0;
    for (std::size_t i = 0; i < m_; ++i) v += cost_[basis_[i]] * at(i, rhs());
    return v;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> x(n_);
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) x[basis_[i]] = at(i, rhs());
    return x;
  }

  // y = S (c_B^T B^{-1})^T, reading B^{-1} off the artificial block and
  // undoing the row sign flips.
  std::vector<Rational> dual() const {
    std::vector<Rational> y(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      Rational s = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rational& cb = cost_[basis_[i]];
        if (sgn(cb) != 0) s += cb * at(i, n_ + k);
      }
      y[k] = sign_[k] * s;
    }
    return y;
  }

  std::size_t columns() const { return n_; }
  std::size_t rows() const { return m_; }

 private:
  Rational& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }
  std::size_t rhs() const { return width_ - 1; }

  std::size_t m_, n_, width_;
  std::vector<Rational> t_;
  std::vector<int> sign_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
};

}  // namespace

LpResult lp_solve(const RationalMatrix& a, std::span<const Rational> b, std::span<const Rational> c) {
  if (b.size() != a.rows || c.size() != a.cols) throw std::invalid_argument("lp_solve: dimension mismatch");
  Tableau tab(a, b);
  LpResult result;

  std::vector<Rational> phase1(a.cols + a.rows, 0);
  for (std::size_t k = 0; k < a.rows; ++k) phase1[a.cols + k] = -1;
  tab.set_objective(phase1);
  tab.optimize(a.cols + a.rows, result.pivots);  // bounded below by zero
  if (sgn(tab.value()) != 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  tab.expel_artificials(result.pivots);

  std::vector<Rational> phase2(a.cols + a.rows, 0);
  for (std::size_t j = 0; j < a.cols; ++j) phase2[j] = c[j];
  tab.set_objective(phase2);
  if (!tab.optimize(a.cols, result.pivots)) throw LpUnbounded();

  result.status = LpStatus::Optimal;
  result.optimum = tab.value();
  result.solution = tab.solution();
  result.dual = tab.dual();
  return result;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace margo
