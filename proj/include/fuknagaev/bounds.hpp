#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "fuknagaev/stochastic.hpp"

namespace fuknagaev {

enum class BoundKind { confidence_threshold, tail_probability };

struct BoundInputs {
  double q = 0.0;
  double D = 1.0;
  double sigma_sq = 0.0;
  double cq_to_q = 0.0;
  /// u for thresholds, t for tail probabilities.
  double level = 0.0;
  std::optional<std::size_t> n;
};

struct BoundResult {
  double value = 0.0;
  BoundKind kind = BoundKind::confidence_threshold;
  BoundInputs inputs;
};

/// 1/(2q) + min{1/q, 1/5} + 1 + 1{q > 3} D^2 q / 3, evaluated left to right.
double constant_c(double q, double D);

/// Threshold B(u) = D sigma sqrt(2 log(2/u)) + c_{q,D} C_q (2/u)^{1/q} with
/// P[max_i ||M_i|| <= B(u)] >= 1 - u.
BoundResult confidence_bound(const MomentProfile& profile, double D, double u);

/// 2 (2 c C_q / t)^q + 2 exp(-t^2 / (8 D^2 sigma^2)), clamped to [0, 1].
BoundResult tail_bound(const MomentProfile& profile, double D, double t);

/// Per-increment moments of an iid sequence.
struct IncrementMoments {
  double sigma1_sq = 0.0;
  double cq1_to_q = 0.0;
  double q = 0.0;
};

struct IndependentSumTerms {
  double gaussian = 0.0;
  double polynomial = 0.0;
};

/// The two summands of the bound on max_k ||(1/n) sum_{i<=k} xi_i||.
IndependentSumTerms independent_sum_terms(const IncrementMoments& m, std::size_t n, double D, double u);
BoundResult independent_sum_bound(const IncrementMoments& m, std::size_t n, double D, double u);

/// Hoelder condition ||f(z) - f(z')|| <= holder_L d(z, z')^alpha with d = sum_i d_i.
/// coordinate_moments[i] = (E d_i(Z_i, Z_i')^{2 alpha}, E d_i(Z_i, Z_i')^{q alpha}).
struct HolderSpec {
  double holder_L = 0.0;
  double alpha = 1.0;
  std::vector<std::pair<double, double>> coordinate_moments;
};

struct HolderConstants {
  double sigma_sq = 0.0;
  double cq_to_q = 0.0;
};

HolderConstants holder_constants(const HolderSpec& spec, double q);

/// E|Z - Z'|^p for independent uniform(0,1) variables: 2 / ((p+1)(p+2)).
double uniform_distance_moment(double p);
/// Upper bound 2^p E|Z|^p = 2^p / (p+1) from the normed-coordinate shortcut.
double uniform_distance_moment_shortcut(double p);

/// n uniform(0,1) coordinates with d_i = |.|.
HolderSpec uniform_holder_spec(std::size_t n, double holder_L, double alpha, double q);

/// Same threshold as confidence_bound, bounding ||f(Z) - E f(Z)||.
BoundResult mcdiarmid_bound(double sigma_sq, double cq_to_q, double q, double D, double u);

/// Checks the two half-threshold conditions behind the tail bound: with
/// u* = 2 exp(-t^2/(8 D^2 sigma^2)) + 2 (2 c C_q / t)^q, both
/// D sigma sqrt(2 log(2/u*)) and c C_q (2/u*)^{1/q} are at most t/2.
struct SplitConditions {
  double u_star = 0.0;
  double gaussian_part = 0.0;
  double polynomial_part = 0.0;
  /// False when u* >= 1 and the conditions are vacuous.
  bool applicable = false;
  bool holds = false;
};

SplitConditions tail_split_conditions(const MomentProfile& profile, double D, double t);

}  // namespace fuknagaev
