#include "fuknagaev/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fuknagaev/error.hpp"
#include "fuknagaev/kernels.hpp"
#include "fuknagaev/random.hpp"

namespace fuknagaev {

SmoothSpace make_euclidean(std::size_t d) {
  if (d == 0) throw Error(ErrorCode::invalid_dimension, "dimension must be at least 1");
  return SmoothSpace(d, NormKind::euclidean, 2.0, 1.0);
}

SmoothSpace make_lp(std::size_t d, double p) {
  if (d == 0) throw Error(ErrorCode::invalid_dimension, "dimension must be at least 1");
  if (!(p >= 2.0) || !std::isfinite(p)) {
    throw Error(ErrorCode::unsupported_exponent,
                "l^p smoothness is only certified for finite p >= 2, got " + std::to_string(p));
  }
  return SmoothSpace(d, NormKind::lp, p, std::sqrt(p - 1.0));
}

double SmoothSpace::norm_power(std::span<const double> v) const {
  if (kind_ == NormKind::euclidean) return kernels::sum_squares(v);
  return kernels::sum_abs_pow(v, p_);
}

double SmoothSpace::norm_from_power(double power) const {
  if (kind_ == NormKind::euclidean || p_ == 2.0) return std::sqrt(power);
  return std::pow(power, 1.0 / p_);
}

double SmoothSpace::norm(std::span<const double> v) const { return norm_from_power(norm_power(v)); }

bool SmoothSpace::contains(std::span<const double> v) const {
  return v.size() == dimension_ &&
         std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

namespace {

std::vector<Vector> corner_cases(std::size_t d) {
  std::vector<Vector> corners;
  corners.emplace_back(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    Vector e(d, 0.0);
    e[i] = 1.0;
    corners.push_back(e);
  }
  if (d >= 2) {
    Vector plus(d, 0.0), minus(d, 0.0);
    plus[0] = plus[1] = 1.0;
    minus[0] = 1.0;
    minus[1] = -1.0;
    corners.push_back(plus);
    corners.push_back(minus);
  }
  corners.emplace_back(d, 1.0);
  return corners;
}

}  // namespace

SmoothnessReport smoothness_certificate(const SmoothSpace& space, std::size_t num_pairs,
                                        std::uint64_t seed,
                                        std::optional<double> smoothness_override) {
  if (num_pairs == 0) throw Error(ErrorCode::invalid_argument, "num_pairs must be at least 1");
  SmoothnessReport report;
  report.smoothness_D = smoothness_override.value_or(space.smoothness());
  report.max_violation = -std::numeric_limits<double>::infinity();
  report.linear_form_max_violation = -std::numeric_limits<double>::infinity();
  const double D = report.smoothness_D;

  const std::size_t d = space.dimension();
  Vector sum(d), diff(d);
  auto check = [&](const Vector& x, const Vector& y) {
    for (std::size_t i = 0; i < d; ++i) {
      sum[i] = x[i] + y[i];
      diff[i] = x[i] - y[i];
    }
    const double nx = space.norm(x), ny = space.norm(y);
    const double ns = space.norm(sum), nd = space.norm(diff);
    const double lhs = ns * ns + nd * nd;
    const double rhs = 2.0 * nx * nx + 2.0 * D * D * ny * ny;
    ++report.pairs;
    if (rhs == 0.0) return;  // x = y = 0: both sides vanish
    const double linear_rhs = 2.0 * nx * nx + 2.0 * D * ny * ny;
    report.linear_form_max_violation = std::max(report.linear_form_max_violation, (lhs - linear_rhs) / linear_rhs);
    const double violation = (lhs - rhs) / rhs;
    report.max_relative_gap = std::max(report.max_relative_gap, std::fabs(violation));
    if (violation > report.max_violation) {
      report.max_violation = violation;
      report.worst_x = x;
      report.worst_y = y;
    }
  };

  const auto corners = corner_cases(d);
  for (const auto& x : corners) {
    for (const auto& y : corners) check(x, y);
  }
  check(corners.back(), corners.back());

  Engine engine = make_engine(seed);
  std::normal_distribution<double> normal;
  Vector x(d), y(d);
  for (std::size_t k = 0; k < num_pairs; ++k) {
    const double scale = std::pow(10.0, 4.0 * uniform_open01(engine) - 2.0);
    for (std::size_t i = 0; i < d; ++i) x[i] = normal(engine);
    for (std::size_t i = 0; i < d; ++i) y[i] = scale * normal(engine);
    check(x, y);
  }
  report.passed = report.max_violation <= kSmoothnessTolerance;
  return report;
}

}  // namespace fuknagaev
