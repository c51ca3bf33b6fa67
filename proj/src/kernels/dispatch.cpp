#include "ivdiff/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ivdiff::kernels {

namespace {

Backend detect() {
  if (const char* env = std::getenv("IVDIFF_KERNELS"); env && std::string(env) == "scalar")
    return Backend::scalar;
  return avx2_available() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_available() {
#if defined(IVDIFF_HAVE_AVX2)
  static const bool ok = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return ok;
#else
  return false;
#endif
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void force_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::runtime_error("AVX2 kernels are not available on this machine");
  current().store(b, std::memory_order_relaxed);
}

double inverse_power_sum(double base, std::int64_t first, std::int64_t count, int power) {
  if (count <= 0) return 0.0;
#if defined(IVDIFF_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::inverse_power_sum(base, first, count, power);
#endif
  return scalar::inverse_power_sum(base, first, count, power);
}

void yoccoz_jet(double u, double v, std::span<const double> y, std::span<double> d1,
                std::span<double> d2) {
#if defined(IVDIFF_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::yoccoz_jet(u, v, y, d1, d2);
#endif
  scalar::yoccoz_jet(u, v, y, d1, d2);
}

double max_scaled_abs_diff(std::span<const double> a, std::span<const double> b,
                           std::span<const double> w) {
#if defined(IVDIFF_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::max_scaled_abs_diff(a, b, w);
#endif
  return scalar::max_scaled_abs_diff(a, b, w);
}

}  // namespace ivdiff::kernels
