#include "ivdiff/kernels/kernels.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace ivdiff::kernels::scalar {

namespace {

inline double int_pow(double x, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

double inverse_power_sum(double base, std::int64_t first, std::int64_t count, int power) {
  // Neumaier compensated sum, smallest terms first.
  double sum = 0.0;
  double comp = 0.0;
  for (std::int64_t i = count - 1; i >= 0; --i) {
    const double x = base + static_cast<double>(first + i);
    const double term = 1.0 / int_pow(x, power);
    const double t = sum + term;
    if (std::fabs(sum) >= std::fabs(term))
      comp += (sum - t) + term;
    else
      comp += (term - t) + sum;
    sum = t;
  }
  return sum + comp;
}

void yoccoz_jet(double u, double v, std::span<const double> y, std::span<double> d1,
                std::span<double> d2) {
  assert(y.size() == d1.size() && y.size() == d2.size());
  const double iu2 = 1.0 / (u * u);
  const double iv2 = 1.0 / (v * v);
  const double gap = iv2 - iu2;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double y2 = y[i] * y[i];
    const double num = y2 + iu2;
    const double den = y2 + iv2;
    d1[i] = num / den;
    d2[i] = std::numbers::pi * num * (2.0 * y[i] * gap) / (den * den);
  }
}

double max_scaled_abs_diff(std::span<const double> a, std::span<const double> b,
                           std::span<const double> w) {
  assert(a.size() == b.size() && a.size() == w.size());
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, std::fabs(a[i] - b[i]) * w[i]);
  return best;
}

}  // namespace ivdiff::kernels::scalar
