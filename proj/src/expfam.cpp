#include "margo/expfam.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "margo/kernels.hpp"

namespace margo {
namespace {

std::vector<double> logits(const SimplicialComplex& complex, const ConfigSpace& space, std::span<const double> theta) {
  MarginalLayout layout(complex, space);
  if (theta.size() != layout.rows())
    throw std::invalid_argument("density: theta has " + std::to_string(theta.size()) + " entries, A has " +
                                std::to_string(layout.rows()) + " rows");
  std::vector<double> s(space.size(), 0.0);
  for (std::size_t x = 0; x < s.size(); ++x)
    for (std::size_t f = 0; f < layout.facets(); ++f) s[x] += theta[layout.row(x, f)];
  return s;
}

double xlogx(double v) { return v > 0 ? v * std::log(v) : 0.0; }

}  // namespace

Density make_density(std::vector<double> p, double tol) {
  for (double v : p)
    if (!(v >= 0)) throw std::invalid_argument("density: entries must be nonnegative");
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > tol) throw std::invalid_argument("density: entries do not sum to 1");
  return Density{std::move(p)};
}

double log_partition(const SimplicialComplex& complex, const ConfigSpace& space, std::span<const double> theta) {
  auto s = logits(complex, space, theta);
  const double shift = kernels::max(s);
  for (double& v : s) v = std::exp(v - shift);
  return shift + std::log(kernels::sum(s));
}

Density density(const SimplicialComplex& complex, const ConfigSpace& space, std::span<const double> theta) {
  auto s = logits(complex, space, theta);
  const double shift = kernels::max(s);
  for (double& v : s) v = std::exp(v - shift);
  const double z = kernels::sum(s);
  for (double& v : s) v /= z;
  return Density{std::move(s)};
}

bool satisfies_binomials(const Density& p, std::span<const Move> moves, double tol) {
  for (const Move& m : moves) {
    if (m.size() != p.p.size()) throw std::invalid_argument("satisfies_binomials: length mismatch");
    double plus = 1.0, minus = 1.0;
    for (std::size_t x = 0; x < m.size(); ++x) {
      const std::int64_t e = m.entries()[x];
      // 0^0 = 1: zero exponents contribute nothing.
      if (e > 0) plus *= std::pow(p.p[x], static_cast<double>(e));
      if (e < 0) minus *= std::pow(p.p[x], static_cast<double>(-e));
    }
    if (std::abs(plus - minus) > tol) return false;
  }
  return true;
}

double multiinformation(const Density& p, const ConfigSpace& space) {
  if (p.p.size() != space.size()) throw std::invalid_argument("multiinformation: length mismatch");
  double joint = 0.0;
  for (double v : p.p) joint -= xlogx(v);
  double marginals = 0.0;
  for (int i = 0; i < space.n(); ++i) {
    std::vector<double> pi(space.cardinality(i), 0.0);
    for (std::size_t x = 0; x < p.p.size(); ++x) pi[space.value(x, i)] += p.p[x];
    for (double v : pi) marginals -= xlogx(v);
  }
  return marginals - joint;
}

std::vector<double> concentrating_parameters(const FacialityCertificate& face, double scale) {
  if (!face.is_face) throw std::invalid_argument("concentrating_parameters: certificate is not a face");
  std::vector<double> theta(face.normal.size());
  for (std::size_t r = 0; r < theta.size(); ++r) theta[r] = -scale * face.normal[r].get_d();
  return theta;
}

}  // namespace margo
