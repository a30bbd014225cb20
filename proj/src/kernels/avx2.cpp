// Compiled with -mavx2 only. FMA stays disabled so every lane performs the
// same rounding sequence as the scalar reference.

#include <immintrin.h>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "kernels_internal.hpp"

namespace fuknagaev::kernels::detail {
namespace {

inline __m256d abs_pd(__m256d v) {
  const __m256d mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  return _mm256_and_pd(v, mask);
}

inline __m256d abs_ipow_pd(__m256d x, int p) {
  const __m256d a = abs_pd(x);
  __m256d r = a;
  for (int i = 1; i < p; ++i) r = _mm256_mul_pd(r, a);
  return r;
}

inline double fold(__m256d acc) {
  alignas(32) double lane[4];
  _mm256_store_pd(lane, acc);
  return (lane[0] + lane[2]) + (lane[1] + lane[3]);
}

double sum_squares_avx2(std::span<const double> x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256d v = _mm256_loadu_pd(x.data() + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = fold(acc);
  for (; i < x.size(); ++i) total += x[i] * x[i];
  return total;
}

double sum_abs_pow_int_avx2(std::span<const double> x, int p) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    acc = _mm256_add_pd(acc, abs_ipow_pd(_mm256_loadu_pd(x.data() + i), p));
  }
  double total = fold(acc);
  for (; i < x.size(); ++i) total += abs_ipow(x[i], p);
  return total;
}

std::size_t count_greater_avx2(std::span<const double> x, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    const __m256d gt = _mm256_cmp_pd(_mm256_loadu_pd(x.data() + i), t, _CMP_GT_OQ);
    count += static_cast<std::size_t>(__builtin_popcount(_mm256_movemask_pd(gt)));
  }
  for (; i < x.size(); ++i) count += x[i] > threshold ? 1 : 0;
  return count;
}

void batch_max_power_sum_avx2(const PathBatch& b, int p, std::span<double> out) {
  std::vector<double> sums(b.dim * b.lanes, 0.0);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(b.lanes), 0.0);
  const std::size_t vec_lanes = b.lanes - b.lanes % 4;
  for (std::size_t s = 0; s < b.steps; ++s) {
    const double* row = b.data.data() + s * b.dim * b.lanes;
    for (std::size_t l = 0; l < vec_lanes; l += 4) {
      __m256d power = _mm256_setzero_pd();
      for (std::size_t c = 0; c < b.dim; ++c) {
        double* m = sums.data() + c * b.lanes + l;
        const __m256d updated =
            _mm256_add_pd(_mm256_loadu_pd(m), _mm256_loadu_pd(row + c * b.lanes + l));
        _mm256_storeu_pd(m, updated);
        power = _mm256_add_pd(power, abs_ipow_pd(updated, p));
      }
      // Power sums are nonnegative and finite, so max_pd agrees with std::max.
      _mm256_storeu_pd(out.data() + l, _mm256_max_pd(power, _mm256_loadu_pd(out.data() + l)));
    }
    for (std::size_t l = vec_lanes; l < b.lanes; ++l) {
      double power = 0.0;
      for (std::size_t c = 0; c < b.dim; ++c) {
        double& m = sums[c * b.lanes + l];
        m += row[c * b.lanes + l];
        power += abs_ipow(m, p);
      }
      out[l] = std::max(out[l], power);
    }
  }
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{sum_squares_avx2, sum_abs_pow_int_avx2, count_greater_avx2,
                                 batch_max_power_sum_avx2};
  return table;
}

}  // namespace fuknagaev::kernels::detail
