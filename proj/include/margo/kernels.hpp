#pragma once

// Dense integer and floating-point inner loops, with a scalar reference
// implementation and an AVX2 variant chosen once at startup from the CPU
// feature bits. Setting MARGO_SIMD=scalar in the environment, or calling
// set_backend(), pins the scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace margo::kernels {

struct SignCounts {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const SignCounts&, const SignCounts&) = default;
};

enum class Backend { Scalar, Avx2 };

/// Sum of a[i] * b[i]. Lengths must match.
std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b);
/// y[i] += alpha * x[i].
void axpy(std::int64_t alpha, std::span<const std::int64_t> x, std::span<std::int64_t> y);
SignCounts sign_counts(std::span<const std::int64_t> v);
bool all_zero(std::span<const std::int64_t> v);
double max(std::span<const double> v);
double sum(std::span<const double> v);

Backend active_backend();
/// Falls back to Scalar when the requested backend is not supported here.
void set_backend(Backend backend);
bool backend_supported(Backend backend);
std::string_view backend_name(Backend backend);

// Direct entry points, used by the equivalence tests.
namespace scalar {
std::int64_t dot(const std::int64_t* a, const std::int64_t* b, std::size_t n);
void axpy(std::int64_t alpha, const std::int64_t* x, std::int64_t* y, std::size_t n);
SignCounts sign_counts(const std::int64_t* v, std::size_t n);
bool all_zero(const std::int64_t* v, std::size_t n);
double max(const double* v, std::size_t n);
double sum(const double* v, std::size_t n);
}  // namespace scalar

namespace avx2 {
std::int64_t dot(const std::int64_t* a, const std::int64_t* b, std::size_t n);
void axpy(std::int64_t alpha, const std::int64_t* x, std::int64_t* y, std::size_t n);
SignCounts sign_counts(const std::int64_t* v, std::size_t n);
bool all_zero(const std::int64_t* v, std::size_t n);
double max(const double* v, std::size_t n);
double sum(const double* v, std::size_t n);
}  // namespace avx2

}  // namespace margo::kernels
