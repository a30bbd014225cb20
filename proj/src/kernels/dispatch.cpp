#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

#include "fuknagaev/error.hpp"
#include "kernels_internal.hpp"

namespace fuknagaev::kernels {
namespace {

Isa detect() {
  if (const char* forced = std::getenv("FUKNAGAEV_ISA"); forced != nullptr) {
    if (std::string(forced) == "scalar") return Isa::scalar;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(FUKNAGAEV_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorCode::invalid_argument,
                "ISA " + std::string(to_string(isa)) + " is not available on this machine");
  }
  active().store(isa, std::memory_order_relaxed);
}

const KernelTable& table_for(Isa isa) {
#if defined(FUKNAGAEV_HAVE_AVX2)
  if (isa == Isa::avx2) return detail::avx2_table();
#endif
  (void)isa;
  return detail::scalar_table();
}

int integer_exponent(double p) {
  if (p >= 1.0 && p <= 64.0 && std::floor(p) == p) return static_cast<int>(p);
  return 0;
}

double sum_squares(std::span<const double> x) { return table_for(active_isa()).sum_squares(x); }

double sum_abs_pow(std::span<const double> x, double p) {
  if (const int ip = integer_exponent(p); ip != 0) {
    return table_for(active_isa()).sum_abs_pow_int(x, ip);
  }
  double total = 0.0;
  for (double v : x) total += std::pow(std::fabs(v), p);
  return total;
}

std::size_t count_greater(std::span<const double> x, double threshold) {
  return table_for(active_isa()).count_greater(x, threshold);
}

void batch_max_power_sum(const PathBatch& batch, double p, std::span<double> out) {
  if (out.size() < batch.lanes || batch.data.size() < batch.steps * batch.dim * batch.lanes) {
    throw Error(ErrorCode::invalid_argument, "batch buffers are smaller than the declared shape");
  }
  if (const int ip = integer_exponent(p); ip != 0) {
    table_for(active_isa()).batch_max_power_sum(batch, ip, out);
    return;
  }
  std::vector<double> sums(batch.dim * batch.lanes, 0.0);
  for (std::size_t l = 0; l < batch.lanes; ++l) out[l] = 0.0;
  for (std::size_t s = 0; s < batch.steps; ++s) {
    const double* row = batch.data.data() + s * batch.dim * batch.lanes;
    for (std::size_t l = 0; l < batch.lanes; ++l) {
      double power = 0.0;
      for (std::size_t c = 0; c < batch.dim; ++c) {
        double& m = sums[c * batch.lanes + l];
        m += row[c * batch.lanes + l];
        power += std::pow(std::fabs(m), p);
      }
      out[l] = std::max(out[l], power);
    }
  }
}

}  // namespace fuknagaev::kernels
