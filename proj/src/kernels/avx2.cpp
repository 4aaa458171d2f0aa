// AVX2 kernels. Built with -mavx2; only reached through the dispatcher once
// the CPU reports AVX2 support.

#include "margo/kernels.hpp"

#if defined(MARGO_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <bit>
#include <limits>

namespace margo::kernels::avx2 {
namespace {

// Low 64 bits of a lane-wise 64x64 product; AVX2 has no vpmullq.
inline __m256i mullo_epi64(__m256i a, __m256i b) {
  const __m256i a_hi = _mm256_srli_epi64(a, 32);
  const __m256i b_hi = _mm256_srli_epi64(b, 32);
  const __m256i lo = _mm256_mul_epu32(a, b);
  const __m256i cross = _mm256_add_epi64(_mm256_mul_epu32(a_hi, b), _mm256_mul_epu32(a, b_hi));
  return _mm256_add_epi64(lo, _mm256_slli_epi64(cross, 32));
}

inline std::int64_t hsum_epi64(__m256i v) {
  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

inline __m256i load(const std::int64_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

std::int64_t dot(const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_epi64(acc, mullo_epi64(load(a + i), load(b + i)));
  std::int64_t s = hsum_epi64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(std::int64_t alpha, const std::int64_t* x, std::int64_t* y, std::size_t n) {
  const __m256i va = _mm256_set1_epi64x(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i r = _mm256_add_epi64(load(y + i), mullo_epi64(va, load(x + i)));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), r);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

SignCounts sign_counts(const std::int64_t* v, std::size_t n) {
  const __m256i zero = _mm256_setzero_si256();
  SignCounts c;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256i x = load(v + i);
    int pos = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(x, zero)));
    int neg = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(zero, x)));
    c.positive += std::popcount(static_cast<unsigned>(pos));
    c.negative += std::popcount(static_cast<unsigned>(neg));
  }
  for (; i < n; ++i) {
    c.positive += v[i] > 0;
    c.negative += v[i] < 0;
  }
  return c;
}

bool all_zero(const std::int64_t* v, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_or_si256(acc, load(v + i));
  if (!_mm256_testz_si256(acc, acc)) return false;
  for (; i < n; ++i)
    if (v[i] != 0) return false;
  return true;
}

double max(const double* v, std::size_t n) {
  __m256d m = _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) m = _mm256_max_pd(m, _mm256_loadu_pd(v + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) r = std::max(r, v[i]);
  return r;
}

double sum(const double* v, std::size_t n) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) s = _mm256_add_pd(s, _mm256_loadu_pd(v + i));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, s);
  double r = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) r += v[i];
  return r;
}

}  // namespace margo::kernels::avx2

#else

namespace margo::kernels::avx2 {

std::int64_t dot(const std::int64_t* a, const std::int64_t* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
void axpy(std::int64_t alpha, const std::int64_t* x, std::int64_t* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
SignCounts sign_counts(const std::int64_t* v, std::size_t n) { return scalar::sign_counts(v, n); }
bool all_zero(const std::int64_t* v, std::size_t n) { return scalar::all_zero(v, n); }
double max(const double* v, std::size_t n) { return scalar::max(v, n); }
double sum(const double* v, std::size_t n) { return scalar::sum(v, n); }

}  // namespace margo::kernels::avx2

#endif
