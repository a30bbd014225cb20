#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace fuknagaev {

using Vector = std::vector<double>;

enum class NormKind { euclidean, lp };

/// Finite-dimensional normed space with a certified (2,D)-smoothness
/// parameter: ||x+y||^2 + ||x-y||^2 <= 2||x||^2 + 2 D^2 ||y||^2.
class SmoothSpace {
 public:
  std::size_t dimension() const noexcept { return dimension_; }
  NormKind norm_kind() const noexcept { return kind_; }
  /// Norm exponent; 2 for the Euclidean norm.
  double exponent() const noexcept { return p_; }
  double smoothness() const noexcept { return smoothness_; }

  /// sum_i |v_i|^p, i.e. ||v||^p.
  double norm_power(std::span<const double> v) const;
  double norm(std::span<const double> v) const;
  /// Converts a power sum back to a norm value.
  double norm_from_power(double power) const;

  bool contains(std::span<const double> v) const;

  friend bool operator==(const SmoothSpace&, const SmoothSpace&) = default;

 private:
  friend SmoothSpace make_euclidean(std::size_t d);
  friend SmoothSpace make_lp(std::size_t d, double p);

  SmoothSpace(std::size_t dimension, NormKind kind, double p, double smoothness)
      : dimension_(dimension), kind_(kind), p_(p), smoothness_(smoothness) {}

  std::size_t dimension_;
  NormKind kind_;
  double p_;
  double smoothness_;
};

/// Hilbert space R^d; D = 1. Throws invalid-dimension for d = 0.
SmoothSpace make_euclidean(std::size_t d);

/// l^p(R^d) for p >= 2 with D = sqrt(p - 1). Throws unsupported-exponent for p < 2.
SmoothSpace make_lp(std::size_t d, double p);

struct SmoothnessReport {
  double smoothness_D = 1.0;
  std::size_t pairs = 0;
  /// max over pairs of (lhs - rhs) / rhs; nonpositive when the inequality holds.
  double max_violation = 0.0;
  /// max over pairs of |lhs - rhs| / rhs; zero for an exact parallelogram law.
  double max_relative_gap = 0.0;
  /// max violation of the variant with 2 D ||y||^2 in place of 2 D^2 ||y||^2,
  /// which l^p with D = sqrt(p - 1) does not satisfy for p > 2.
  double linear_form_max_violation = 0.0;
  bool passed = false;
  Vector worst_x;
  Vector worst_y;
};

inline constexpr double kSmoothnessTolerance = 1e-9;

/// Samples standard-normal pairs plus a fixed list of corner cases and
/// records the worst relative violation of the smoothness inequality.
/// `smoothness_override` checks a different D against the same norm.
SmoothnessReport smoothness_certificate(const SmoothSpace& space, std::size_t num_pairs,
                                        std::uint64_t seed,
                                        std::optional<double> smoothness_override = std::nullopt);

}  // namespace fuknagaev
