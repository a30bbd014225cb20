#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace fuknagaev {

/// Equally weighted sample, stored in ascending order.
class EmpiricalSample {
 public:
  /// Sorts the values; throws invalid-argument when empty or non-finite.
  explicit EmpiricalSample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double min() const noexcept { return values_.front(); }
  double max() const noexcept { return values_.back(); }
  double mean() const;
  /// Number of sample points strictly greater than t.
  std::size_t count_above(double t) const;

 private:
  std::vector<double> values_;
};

/// One value per line; blank lines and lines starting with '#' are skipped.
EmpiricalSample parse_sample(std::istream& in);
EmpiricalSample read_sample_file(const std::filesystem::path& path);

/// inf{t : P[X > t] < u} under the empirical law (strict tail inequality).
double quantile_q(const EmpiricalSample& sample, double u);

/// (1/u) * integral_0^u Q(s) ds as a weighted sum of top order statistics.
double cvar_integral(const EmpiricalSample& sample, double u);

/// inf_t { t + E(X - t)_+ / u }, evaluated exactly over the sample points.
double cvar_variational(const EmpiricalSample& sample, double u);

inline constexpr double kCvarAgreementTolerance = 1e-9;

/// Integral form, cross-checked against the variational form; throws
/// internal-inconsistency when they differ by more than 1e-9.
double cvar_q1(const EmpiricalSample& sample, double u);

struct QInfinity {
  double value = 0.0;
  /// Minimizing t; 0 or +inf when the infimum is a limit.
  double t = 0.0;
  bool attained = false;
};

/// inf_{t>0} t^{-1} log(E exp(tX) / u), via log-sum-exp and golden-section
/// search on log t. Limits at t -> 0+ (u = 1) and t -> inf (u <= P[X = max])
/// are returned exactly with attained = false.
QInfinity q_infinity(const EmpiricalSample& sample, double u);

struct QuantileTriple {
  double q = 0.0;
  double q1 = 0.0;
  double qinf = 0.0;
};

QuantileTriple quantile_triple(const EmpiricalSample& sample, double u);

// ---------------------------------------------------------------------------

/// Paired outcomes (x_k, y_k) of one equally weighted coupling of X and Y.
struct CoupledSample {
  std::vector<double> x;
  std::vector<double> y;
};

struct LemmaVerdict {
  std::string lemma;
  std::size_t checks = 0;
  std::size_t failures = 0;
  /// Smallest (rhs - lhs) seen; negative means a failure.
  double worst_margin = 0.0;
  bool passed = true;
};

struct QuantileCounterexample {
  CoupledSample pair;
  double u = 0.0;
  double q_sum = 0.0;
  double q_x = 0.0;
  double q_y = 0.0;
  /// True when Q_{X+Y}(u) > Q_X(u) + Q_Y(u) was re-verified.
  bool confirmed = false;
};

struct QuantileSuiteReport {
  std::vector<LemmaVerdict> verdicts;
  QuantileCounterexample counterexample;
  bool passed = false;
};

/// Relative slack for comparisons that involve the numerically optimized Q^inf.
inline constexpr double kQInfinityComparisonSlack = 1e-9;
/// Relative slack for comparisons between sums of order statistics.
inline constexpr double kOrderStatisticSlack = 1e-12;

/// Runs the ordering, monotonicity, subadditivity and Chernoff checks on the
/// coupled samples, the maximal-inequality check on exhaustively enumerated
/// Rademacher walks with up to `walk_steps` steps, and re-verifies the
/// stored counterexample to subadditivity of Q.
QuantileSuiteReport quantile_lemma_suite(std::span<const CoupledSample> samples,
                                         std::span<const double> u_grid, std::size_t walk_steps = 10);

/// The stored pair with Q_{X+Y}(u) > Q_X(u) + Q_Y(u).
QuantileCounterexample stored_counterexample();

}  // namespace fuknagaev
