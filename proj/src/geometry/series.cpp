#include "ivdiff/geometry/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ivdiff/kernels/kernels.hpp"

namespace ivdiff::geometry {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

// Rising factorial p (p+1) ... (p+n-1).
double rising(int p, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= static_cast<double>(p + i);
  return r;
}

// Smallest x at which the omitted B8 term drops below 2^-60 of the tail.
double expansion_start(int p) {
  const double need = rising(p, 7) * (p - 1) / 1209600.0 * std::ldexp(1.0, 61);
  return std::pow(need, 1.0 / 8.0);
}

}  // namespace

Certified power_tail(double c, std::int64_t first, int p) {
  if (p < 2) throw std::invalid_argument("power_tail needs p >= 2");
  const double x0 = c + static_cast<double>(first);
  if (!(x0 >= 1.0)) throw std::invalid_argument("power_tail needs c + first >= 1");
  const double start = expansion_start(p);
  const std::int64_t head = x0 >= start ? 0 : static_cast<std::int64_t>(std::ceil(start - x0));
  const double head_sum = head > 0 ? kernels::inverse_power_sum(c, first, head, p) : 0.0;
  const double x = x0 + static_cast<double>(head);

  const double xp = std::pow(x, -p);
  const double x2 = 1.0 / (x * x);
  const double integral = xp * x / (p - 1);
  const double corr1 = 0.5 * xp;
  const double corr2 = rising(p, 1) / 12.0 * xp / x;
  const double corr3 = -rising(p, 3) / 720.0 * xp / x * x2;
  const double corr4 = rising(p, 5) / 30240.0 * xp / x * x2 * x2;
  const double omitted = rising(p, 7) / 1209600.0 * xp / x * x2 * x2 * x2;

  const double tail = integral + corr1 + corr2 + corr3 + corr4;
  const double value = head_sum + tail;
  const double err = 2.0 * omitted + 8.0 * eps * tail + (p + 4.0) * eps * head_sum + eps * value;
  return {value, err};
}

Certified power_sum_symmetric(double c, int p) {
  const Certified tail = power_tail(c, 1, p);
  const double centre = std::pow(c, -p);
  const double value = centre + 2.0 * tail.value;
  return {value, 2.0 * tail.err + eps * centre + eps * value};
}

Certified navas_total_length(std::int64_t k) {
  return power_sum_symmetric(static_cast<double>(k), 2);
}

}  // namespace ivdiff::geometry
