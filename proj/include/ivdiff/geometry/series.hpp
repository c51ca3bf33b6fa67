#pragma once

#include <cstdint>

namespace ivdiff::geometry {

/// A binary64 value together with a bound on its absolute error.
struct Certified {
  double value = 0.0;
  double err = 0.0;
};

/// sum_{t >= first} (c + t)^(-p) for c + first >= 1 and p >= 2.
///
/// A short head is summed directly until x = c + first + N is large enough;
/// the rest is the Euler-Maclaurin expansion at x through the B6 term. For a
/// completely monotone summand the remainder is bounded by the first omitted
/// term, which (doubled) plus rounding forms the error bound.
Certified power_tail(double c, std::int64_t first, int p);

/// sum_{t in Z} (c + |t|)^(-p).
Certified power_sum_symmetric(double c, int p);

/// T_k = sum_{i in Z} (|i| + k)^(-2).
Certified navas_total_length(std::int64_t k);

}  // namespace ivdiff::geometry
