#include "fuknagaev/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fuknagaev/error.hpp"

namespace fuknagaev::numeric {

Minimum minimize_log_unimodal(const std::function<double(double)>& f, double lo, double hi,
                              const MinimizeOptions& options) {
  if (!(lo > 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::invalid_argument, "search interval must satisfy 0 < lo < hi");
  }
  auto eval = [&](double log_t) {
    const double v = f(std::exp(log_t));
    if (std::isnan(v)) throw Error(ErrorCode::domain_error, "objective evaluated to NaN");
    return v;
  };

  const double a0 = std::log(lo), b0 = std::log(hi);
  const int points =
      std::max(16, static_cast<int>(std::ceil((b0 - a0) / std::log(10.0) * options.points_per_decade)));
  std::vector<double> grid(static_cast<std::size_t>(points) + 1);
  std::size_t best = 0;
  double best_value = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // Pin the endpoints so the limits themselves are evaluated exactly.
    grid[i] = i == 0 ? a0 : i + 1 == grid.size() ? b0 : a0 + (b0 - a0) * static_cast<double>(i) / points;
    const double v = eval(grid[i]);
    if (i == 0 || v < best_value) {
      best = i;
      best_value = v;
    }
  }

  Minimum result;
  result.t = std::exp(grid[best]);
  result.value = best_value;
  result.interior = best != 0 && best + 1 != grid.size();
  const std::size_t left = best == 0 ? 0 : best - 1;
  const std::size_t right = best + 1 == grid.size() ? best : best + 1;
  double a = grid[left], b = grid[right];

  constexpr double inv_phi = 0.6180339887498949;
  double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
  double fc = eval(c), fd = eval(d);
  int iter = 0;
  while (iter < options.max_iter && (b - a) > options.rel_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = eval(d);
    }
    ++iter;
  }
  result.iterations = iter;
  if (fc < result.value) {
    result.value = fc;
    result.t = std::exp(c);
  }
  if (fd < result.value) {
    result.value = fd;
    result.t = std::exp(d);
  }
  if (!std::isfinite(result.value)) {
    throw Error(ErrorCode::domain_error, "objective is not finite anywhere in the bracket");
  }
  return result;
}

}  // namespace fuknagaev::numeric
