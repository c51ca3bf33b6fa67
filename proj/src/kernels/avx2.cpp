// Compiled with -mavx2 -mfma; only reached through runtime dispatch.
#include "ivdiff/kernels/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>

namespace ivdiff::kernels::avx2 {

namespace {

inline __m256d int_pow(__m256d x, int p) {
  __m256d r = _mm256_set1_pd(1.0);
  for (int i = 0; i < p; ++i) r = _mm256_mul_pd(r, x);
  return r;
}

inline __m256d abs_pd(__m256d x) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

// Lane-wise Neumaier step.
inline void neumaier(__m256d& sum, __m256d& comp, __m256d term) {
  const __m256d t = _mm256_add_pd(sum, term);
  const __m256d big_sum = _mm256_cmp_pd(abs_pd(sum), abs_pd(term), _CMP_GE_OQ);
  const __m256d c1 = _mm256_add_pd(_mm256_sub_pd(sum, t), term);
  const __m256d c2 = _mm256_add_pd(_mm256_sub_pd(term, t), sum);
  comp = _mm256_add_pd(comp, _mm256_blendv_pd(c2, c1, big_sum));
  sum = t;
}

}  // namespace

double inverse_power_sum(double base, std::int64_t first, std::int64_t count, int power) {
  __m256d sum = _mm256_setzero_pd();
  __m256d comp = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const std::int64_t blocks = count / 4;

  // Scalar tail covers the largest indices, i.e. the smallest terms, first.
  double tail = 0.0;
  double tail_comp = 0.0;
  for (std::int64_t i = count - 1; i >= 4 * blocks; --i) {
    const double x = base + static_cast<double>(first + i);
    double xp = 1.0;
    for (int k = 0; k < power; ++k) xp *= x;
    const double term = 1.0 / xp;
    const double t = tail + term;
    if (std::fabs(tail) >= std::fabs(term))
      tail_comp += (tail - t) + term;
    else
      tail_comp += (term - t) + tail;
    tail = t;
  }

  for (std::int64_t blk = blocks - 1; blk >= 0; --blk) {
    const double x0 = base + static_cast<double>(first + 4 * blk);
    const __m256d x = _mm256_add_pd(_mm256_set1_pd(x0), _mm256_set_pd(3.0, 2.0, 1.0, 0.0));
    const __m256d term = _mm256_div_pd(one, int_pow(x, power));
    neumaier(sum, comp, term);
  }

  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, sum);
  _mm256_store_pd(c, comp);

  // Combine lanes with the same compensated step.
  double total = tail;
  double total_comp = tail_comp;
  for (int lane = 3; lane >= 0; --lane) {
    for (double term : {s[lane], c[lane]}) {
      const double t = total + term;
      if (std::fabs(total) >= std::fabs(term))
        total_comp += (total - t) + term;
      else
        total_comp += (term - t) + total;
      total = t;
    }
  }
  return total + total_comp;
}

void yoccoz_jet(double u, double v, std::span<const double> y, std::span<double> d1,
                std::span<double> d2) {
  assert(y.size() == d1.size() && y.size() == d2.size());
  const double iu2 = 1.0 / (u * u);
  const double iv2 = 1.0 / (v * v);
  const double gap = iv2 - iu2;
  const __m256d viu2 = _mm256_set1_pd(iu2);
  const __m256d viv2 = _mm256_set1_pd(iv2);
  const __m256d vscale = _mm256_set1_pd(2.0 * std::numbers::pi * gap);
  const std::size_t n = y.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d yy = _mm256_loadu_pd(y.data() + i);
    const __m256d y2 = _mm256_mul_pd(yy, yy);
    const __m256d num = _mm256_add_pd(y2, viu2);
    const __m256d den = _mm256_add_pd(y2, viv2);
    _mm256_storeu_pd(d1.data() + i, _mm256_div_pd(num, den));
    const __m256d top = _mm256_mul_pd(_mm256_mul_pd(num, yy), vscale);
    _mm256_storeu_pd(d2.data() + i, _mm256_div_pd(top, _mm256_mul_pd(den, den)));
  }
  for (; i < n; ++i) {
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
  const std::size_t n = a.size();
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
    best = _mm256_max_pd(best, _mm256_mul_pd(d, _mm256_loadu_pd(w.data() + i)));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double out = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) out = std::max(out, std::fabs(a[i] - b[i]) * w[i]);
  return out;
}

}  // namespace ivdiff::kernels::avx2
