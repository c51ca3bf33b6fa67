#include "ivdiff/geometry/kn_plan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ivdiff::geometry {

std::vector<ConditionCheck> kn_conditions(double M, int n, std::int64_t k_int) {
  const long double k = static_cast<long double>(k_int);
  const long double m = 2.0L * n + 1.0L;
  const long double twon = 2.0L * n;
  const long double shrink = m * k / (m * k - 2.0L);

  std::vector<ConditionCheck> out;
  const long double p1 = shrink * std::pow((k + 1.0L) / k, twon);
  out.push_back({"perro1", static_cast<double>(p1), 2.0, p1 <= 2.0L});
  const long double p2 = (1.0L - 2.0L / (m * k)) * std::pow((k - 1.0L) / k, twon);
  out.push_back({"perro2", static_cast<double>(p2), 0.5, p2 >= 0.5L});
  const long double t_lhs = twon * std::log(k);
  const long double t_rhs = std::log(shrink);
  out.push_back({"tonta", static_cast<double>(t_lhs), static_cast<double>(t_rhs), t_lhs >= t_rhs});
  const long double d_lhs = std::log(k) / k * (n * std::ldexp(1.0L, 2 * n + 3) + 32.0L / m);
  const long double d_rhs = static_cast<long double>(M) / (12.0L * std::numbers::pi_v<long double>);
  out.push_back({"dos", static_cast<double>(d_lhs), static_cast<double>(d_rhs), d_lhs <= d_rhs});
  return out;
}

bool kn_admissible(double M, int n, std::int64_t k) {
  const auto checks = kn_conditions(M, n, k);
  return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.holds; });
}

KnPlan kn_plan(double M, int n_max) {
  if (!(M > 0.0) || !std::isfinite(M)) throw std::invalid_argument("M must be positive");
  if (n_max < 1 || n_max > 12) throw std::invalid_argument("n_max must lie in [1, 12]");
  KnPlan plan;
  plan.M = M;
  std::int64_t prev = 0;
  for (int n = 1; n <= n_max; ++n) {
    const std::int64_t lo = std::max<std::int64_t>(4, prev + 1);
    std::int64_t k = lo;
    if (!kn_admissible(M, n, lo)) {
      std::int64_t bad = lo;
      std::int64_t good = lo;
      do {
        bad = good;
        if (good > (std::int64_t{1} << 60)) throw std::overflow_error("k_n search overflow");
        good *= 2;
      } while (!kn_admissible(M, n, good));
      while (good - bad > 1) {
        const std::int64_t mid = bad + (good - bad) / 2;
        (kn_admissible(M, n, mid) ? good : bad) = mid;
      }
      k = good;
    }
    plan.k.push_back(k);
    plan.report.push_back(kn_conditions(M, n, k));
    prev = k;
  }
  return plan;
}

}  // namespace ivdiff::geometry
