#include <algorithm>
#include <limits>

#include "margo/kernels.hpp"

namespace margo::kernels::scalar {

std::int64_t dot(const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy(std::int64_t alpha, const std::int64_t* x, std::int64_t* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

SignCounts sign_counts(const std::int64_t* v, std::size_t n) {
  SignCounts c;
  for (std::size_t i = 0; i < n; ++i) {
    c.positive += v[i] > 0;
    c.negative += v[i] < 0;
  }
  return c;
}

bool all_zero(const std::int64_t* v, std::size_t n) {
  return std::all_of(v, v + n, [](std::int64_t x) { return x == 0; });
}

double max(const double* v, std::size_t n) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, v[i]);
  return m;
}

// Plain left-to-right summation; the AVX2 variant uses four lanes, so the two
// agree to rounding, not bitwise.
double sum(const double* v, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += v[i];
  return s;
}

}  // namespace margo::kernels::scalar
