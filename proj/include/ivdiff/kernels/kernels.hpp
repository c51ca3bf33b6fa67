#pragma once

// Data-parallel numeric inner loops. Every kernel has a scalar reference
// implementation and, on x86-64, an AVX2+FMA variant chosen at runtime.
// The dispatching entry points live directly in ivdiff::kernels; the
// per-backend symbols are exposed for equivalence testing.

#include <cstdint>
#include <span>
#include <string_view>

namespace ivdiff::kernels {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b);

/// True when the CPU and the build both support the AVX2 variants.
bool avx2_available();

/// Backend used by the dispatching entry points. Chosen once from CPU
/// features; the environment variable IVDIFF_KERNELS=scalar pins the
/// reference path.
Backend active_backend();

/// Overrides the dispatch choice. Throws std::runtime_error when asking for
/// AVX2 on a machine without it.
void force_backend(Backend b);

/// Sum of (base + t)^(-power) for t = first, ..., first + count - 1, with
/// compensated accumulation. Requires base + first > 0 and power >= 1.
double inverse_power_sum(double base, std::int64_t first, std::int64_t count, int power);

/// Yoccoz-family jets from the inverse coordinate y = phi_u^{-1}(x):
///   d1 = (y^2 + 1/u^2) / (y^2 + 1/v^2)
///   d2 = pi (y^2 + 1/u^2) * 2y (1/v^2 - 1/u^2) / (y^2 + 1/v^2)^2
/// Inputs must be finite with |y| < 1e150. Spans must have equal length.
void yoccoz_jet(double u, double v, std::span<const double> y, std::span<double> d1,
                std::span<double> d2);

/// max_i |a[i] - b[i]| * w[i]; 0 for empty input.
double max_scaled_abs_diff(std::span<const double> a, std::span<const double> b,
                           std::span<const double> w);

namespace scalar {
double inverse_power_sum(double base, std::int64_t first, std::int64_t count, int power);
void yoccoz_jet(double u, double v, std::span<const double> y, std::span<double> d1,
                std::span<double> d2);
double max_scaled_abs_diff(std::span<const double> a, std::span<const double> b,
                           std::span<const double> w);
}  // namespace scalar

#if defined(IVDIFF_HAVE_AVX2)
namespace avx2 {
double inverse_power_sum(double base, std::int64_t first, std::int64_t count, int power);
void yoccoz_jet(double u, double v, std::span<const double> y, std::span<double> d1,
                std::span<double> d2);
double max_scaled_abs_diff(std::span<const double> a, std::span<const double> b,
                           std::span<const double> w);
}  // namespace avx2
#endif

}  // namespace ivdiff::kernels
