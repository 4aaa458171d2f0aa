#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "margo/kernels.hpp"

namespace margo::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(MARGO_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend initial_backend() {
  if (const char* env = std::getenv("MARGO_SIMD"); env && std::string_view(env) == "scalar")
    return Backend::Scalar;
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("kernels: length mismatch");
}

}  // namespace

bool backend_supported(Backend backend) {
  return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend) {
  current().store(backend_supported(backend) ? backend : Backend::Scalar);
}

std::string_view backend_name(Backend backend) {
  return backend == Backend::Avx2 ? "avx2" : "scalar";
}

std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  require_same_length(a.size(), b.size());
  return active_backend() == Backend::Avx2 ? avx2::dot(a.data(), b.data(), a.size())
                                           : scalar::dot(a.data(), b.data(), a.size());
}

void axpy(std::int64_t alpha, std::span<const std::int64_t> x, std::span<std::int64_t> y) {
  require_same_length(x.size(), y.size());
  if (active_backend() == Backend::Avx2)
    avx2::axpy(alpha, x.data(), y.data(), x.size());
  else
    scalar::axpy(alpha, x.data(), y.data(), x.size());
}

SignCounts sign_counts(std::span<const std::int64_t> v) {
  return active_backend() == Backend::Avx2 ? avx2::sign_counts(v.data(), v.size())
                                           : scalar::sign_counts(v.data(), v.size());
}

bool all_zero(std::span<const std::int64_t> v) {
  return active_backend() == Backend::Avx2 ? avx2::all_zero(v.data(), v.size())
                                           : scalar::all_zero(v.data(), v.size());
}

double max(std::span<const double> v) {
  return active_backend() == Backend::Avx2 ? avx2::max(v.data(), v.size())
                                           : scalar::max(v.data(), v.size());
}

double sum(std::span<const double> v) {
  return active_backend() == Backend::Avx2 ? avx2::sum(v.data(), v.size())
                                           : scalar::sum(v.data(), v.size());
}

}  // namespace margo::kernels
