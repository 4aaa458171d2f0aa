#include "margo/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace margo {
namespace {

std::vector<std::size_t> normalize_query(const ConfigSpace& space, std::span<const std::size_t> y) {
  std::vector<std::size_t> q(y.begin(), y.end());
  std::sort(q.begin(), q.end());
  q.erase(std::unique(q.begin(), q.end()), q.end());
  if (q.empty()) throw std::invalid_argument("is_facial: Y must be nonempty");
  if (q.back() >= space.size()) throw std::invalid_argument("is_facial: configuration index out of range");
  return q;
}

std::vector<bool> membership(std::size_t size, const std::vector<std::size_t>& y) {
  std::vector<bool> in(size, false);
  for (auto x : y) in[x] = true;
  return in;
}

// Facial test for one query on a prepared layout.
FacialityCertificate facial_on(const MarginalMatrix& a, std::vector<std::size_t> y) {
  FacialityCertificate cert;
  cert.query = std::move(y);
  const auto in_y = membership(a.cols, cert.query);
  const Rational weight(1, static_cast<unsigned long>(cert.query.size()));

  // Two configurations with the same column: the query's barycenter is also
  // reached by moving one point's weight onto its twin outside Y.
  for (std::size_t x = 0; x < a.cols; ++x) {
    if (in_y[x]) continue;
    for (auto yy : cert.query) {
      bool same = true;
      for (std::size_t r = 0; r < a.rows && same; ++r) same = a.at(r, x) == a.at(r, yy);
      if (!same) continue;
      cert.is_face = false;
      cert.lambda.assign(a.cols, 0);
      for (auto q : cert.query) cert.lambda[q] = weight;
      cert.lambda[yy] = 0;
      cert.lambda[x] = weight;
      cert.optimum = weight;
      return cert;
    }
  }

  // max sum_{x not in Y} lambda_x  s.t.  A lambda = bary(A_Y), 1.lambda = 1.
  RationalMatrix lp(a.rows + 1, a.cols);
  std::vector<Rational> rhs(a.rows + 1, 0);
  for (std::size_t r = 0; r < a.rows; ++r) {
    for (std::size_t x = 0; x < a.cols; ++x) lp.at(r, x) = a.at(r, x);
    for (auto q : cert.query) rhs[r] += a.at(r, q);
    rhs[r] *= weight;
  }
  for (std::size_t x = 0; x < a.cols; ++x) lp.at(a.rows, x) = 1;
  rhs[a.rows] = 1;
  std::vector<Rational> cost(a.cols, 0);
  for (std::size_t x = 0; x < a.cols; ++x) cost[x] = in_y[x] ? 0 : 1;

  auto result = lp_solve(lp, rhs, cost);
  if (result.status != LpStatus::Optimal) throw std::logic_error("is_facial: barycenter LP infeasible");
  cert.optimum = result.optimum;
  cert.is_face = sgn(result.optimum) == 0;
  if (cert.is_face) {
    cert.normal.assign(result.dual.begin(), result.dual.begin() + static_cast<std::ptrdiff_t>(a.rows));
    cert.offset = result.dual[a.rows];
  } else {
    cert.lambda = std::move(result.solution);
  }
  return cert;
}

bool verify_on(const MarginalMatrix& a, const FacialityCertificate& cert) {
  if (cert.query.empty()) return false;
  for (auto q : cert.query)
    if (q >= a.cols) return false;
  const auto in_y = membership(a.cols, cert.query);
  if (cert.is_face) {
    if (cert.normal.size() != a.rows) return false;
    for (std::size_t x = 0; x < a.cols; ++x) {
      Rational h = cert.offset;
      for (std::size_t r = 0; r < a.rows; ++r)
        if (a.at(r, x) != 0) h += cert.normal[r] * a.at(r, x);
      if (in_y[x] ? sgn(h) != 0 : h < 1) return false;
    }
    return true;
  }
  if (cert.lambda.size() != a.cols) return false;
  Rational total = 0, outside = 0;
  for (std::size_t x = 0; x < a.cols; ++x) {
    if (sgn(cert.lambda[x]) < 0) return false;
    total += cert.lambda[x];
    if (!in_y[x]) outside += cert.lambda[x];
  }
  if (total != 1 || sgn(outside) <= 0) return false;
  const Rational weight(1, static_cast<unsigned long>(cert.query.size()));
  for (std::size_t r = 0; r < a.rows; ++r) {
    Rational image = 0, bary = 0;
    for (std::size_t x = 0; x < a.cols; ++x)
      if (a.at(r, x) != 0) image += cert.lambda[x] * a.at(r, x);
    for (auto q : cert.query) bary += a.at(r, q);
    if (image != bary * weight) return false;
  }
  return true;
}

}  // namespace

FacialityCertificate is_facial(const SimplicialComplex& complex, const ConfigSpace& space,
                               std::span<const std::size_t> y) {
  auto query = normalize_query(space, y);
  return facial_on(marginal_matrix(complex, space), std::move(query));
}

bool verify_certificate(const SimplicialComplex& complex, const ConfigSpace& space,
                        const FacialityCertificate& cert) {
  return verify_on(marginal_matrix(complex, space), cert);
}

NeighborlinessReport neighborliness(const SimplicialComplex& complex, const ConfigSpace& space, int k_max,
                                    const SearchLimits& limits) {
  if (k_max < 1) throw std::invalid_argument("neighborliness: k_max must be >= 1");
  const auto a = marginal_matrix(complex, space);
  const std::size_t cells = space.size();
  NeighborlinessReport report;

  double budget = 0;
  for (int s = 1; s <= k_max && static_cast<std::size_t>(s) <= cells; ++s) {
    budget += std::exp(std::lgamma(cells + 1.0) - std::lgamma(s + 1.0) - std::lgamma(cells - s + 1.0));
    if (budget > static_cast<double>(limits.ceiling))
      throw ResourceCeilingExceeded("neighborliness: subsets of size " + std::to_string(s) +
                                        " exceed the resource ceiling of " + std::to_string(limits.ceiling),
                                    limits.ceiling);
    // Batches keep memory flat; inside a batch the least failing index wins.
    constexpr std::size_t kBatch = 512;
    std::vector<std::vector<std::size_t>> batch;
    std::optional<FacialityCertificate> witness;
    auto flush = [&] {
      std::vector<std::optional<FacialityCertificate>> failures(batch.size());
      detail::parallel_for(batch.size(), limits.workers, [&](std::size_t i) {
        auto cert = facial_on(a, batch[i]);
        if (!cert.is_face) failures[i] = std::move(cert);
      });
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (failures[i]) {
          report.subsets_tested += i + 1;
          witness = std::move(failures[i]);
          return;
        }
      }
      report.subsets_tested += batch.size();
      batch.clear();
    };
    for_each_combination(cells, static_cast<std::size_t>(s), [&](std::span<const std::size_t> idx) {
      batch.emplace_back(idx.begin(), idx.end());
      if (batch.size() == kBatch) flush();
      return !witness;
    });
    if (!witness && !batch.empty()) flush();
    if (witness) {
      report.k = s - 1;
      report.witness = std::move(witness);
      return report;
    }
    report.k = s;
  }
  report.limit_reached = true;
  return report;
}

int polytope_dimension(const SimplicialComplex& complex, const ConfigSpace& space) {
  const auto a = marginal_matrix(complex, space);
  if (a.cols <= 1 || a.rows == 0) return 0;
  // Columns A_x - A_0 as rows of a (|X|-1) x d matrix, then elimination.
  RationalMatrix m(a.cols - 1, a.rows);
  for (std::size_t x = 1; x < a.cols; ++x)
    for (std::size_t r = 0; r < a.rows; ++r) m.at(x - 1, r) = a.at(r, x) - a.at(r, 0);
  int rank = 0;
  for (std::size_t col = 0; col < m.cols && static_cast<std::size_t>(rank) < m.rows; ++col) {
    std::size_t pivot = m.rows;
    for (std::size_t r = static_cast<std::size_t>(rank); r < m.rows; ++r)
      if (sgn(m.at(r, col)) != 0) {
        pivot = r;
        break;
      }
    if (pivot == m.rows) continue;
    for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(static_cast<std::size_t>(rank), c));
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < m.rows; ++r) {
      if (sgn(m.at(r, col)) == 0) continue;
      const Rational f = m.at(r, col) / m.at(static_cast<std::size_t>(rank), col);
      for (std::size_t c = col; c < m.cols; ++c) m.at(r, c) -= f * m.at(static_cast<std::size_t>(rank), c);
    }
    ++rank;
  }
  return rank;
}

}  // namespace margo
