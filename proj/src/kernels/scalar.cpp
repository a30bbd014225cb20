#include <algorithm>
#include <vector>

#include "kernels_internal.hpp"

namespace fuknagaev::kernels::detail {
namespace {

// Four accumulators mirror the AVX2 register so results match bit for bit.
double sum_squares_scalar(std::span<const double> x) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    for (int j = 0; j < 4; ++j) acc[j] += x[i + j] * x[i + j];
  }
  double total = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < x.size(); ++i) total += x[i] * x[i];
  return total;
}

double sum_abs_pow_int_scalar(std::span<const double> x, int p) {
  double acc[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= x.size(); i += 4) {
    for (int j = 0; j < 4; ++j) acc[j] += abs_ipow(x[i + j], p);
  }
  double total = (acc[0] + acc[2]) + (acc[1] + acc[3]);
  for (; i < x.size(); ++i) total += abs_ipow(x[i], p);
  return total;
}

std::size_t count_greater_scalar(std::span<const double> x, double threshold) {
  return static_cast<std::size_t>(
      std::count_if(x.begin(), x.end(), [threshold](double v) { return v > threshold; }));
}

void batch_max_power_sum_scalar(const PathBatch& b, int p, std::span<double> out) {
  std::vector<double> sums(b.dim * b.lanes, 0.0);
  std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(b.lanes), 0.0);
  for (std::size_t s = 0; s < b.steps; ++s) {
    const double* row = b.data.data() + s * b.dim * b.lanes;
    for (std::size_t l = 0; l < b.lanes; ++l) {
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

const KernelTable& scalar_table() {
  static const KernelTable table{sum_squares_scalar, sum_abs_pow_int_scalar,
                                 count_greater_scalar, batch_max_power_sum_scalar};
  return table;
}

}  // namespace fuknagaev::kernels::detail
