#pragma once

#include "fuknagaev/kernels.hpp"

namespace fuknagaev::kernels::detail {

inline double abs_ipow(double x, int p) {
  const double a = x < 0.0 ? -x : x;
  double r = a;
  for (int i = 1; i < p; ++i) r *= a;
  return r;
}

const KernelTable& scalar_table();

#if defined(FUKNAGAEV_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace fuknagaev::kernels::detail
