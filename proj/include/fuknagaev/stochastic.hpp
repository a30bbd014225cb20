#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fuknagaev/random.hpp"
#include "fuknagaev/spaces.hpp"

namespace fuknagaev {

// ---------------------------------------------------------------------------
// Increment laws. All are centered and symmetric.

/// Radius R = U^{-1/alpha} (Pareto with scale 1) times a direction that is
/// uniform on the Euclidean sphere and rescaled to unit norm in the space, so
/// ||xi|| = R exactly and E||xi||^p = alpha / (alpha - p).
struct SymmetricPareto {
  double alpha;
};

/// Multivariate Student t: Z * sqrt(dof / W) with Z ~ N(0, I) and W ~ chi^2(dof).
struct StudentT {
  double dof;
};

/// Independent +-scale coordinates.
struct RademacherScale {
  double scale;
};

/// Independent uniform(-half_width, half_width) coordinates.
struct UniformCube {
  double half_width;
};

/// Independent N(0, scale^2) coordinates.
struct Gaussian {
  double scale;
};

using IncrementKind = std::variant<SymmetricPareto, StudentT, RademacherScale, UniformCube, Gaussian>;

struct IncrementDistribution {
  IncrementKind kind;
  SmoothSpace space;
};

/// Validates parameters (alpha, dof > 2; scales > 0) and builds the law.
IncrementDistribution make_distribution(IncrementKind kind, SmoothSpace space);

std::string describe(const IncrementDistribution& dist);

/// Largest p with E||xi||^p finite (infinity for light tails).
double tail_index(const IncrementDistribution& dist);

/// Almost-sure bound on ||xi||, if one exists.
std::optional<double> norm_bound(const IncrementDistribution& dist);

/// Closed-form E||xi||^p when available; nullopt when only Monte Carlo applies.
/// Throws infinite-moment when p >= tail_index.
std::optional<double> analytic_norm_moment(const IncrementDistribution& dist, double p);

/// Draws one increment into `out` (size = dimension).
void draw_increment(const IncrementDistribution& dist, Engine& engine, std::span<double> out);

// ---------------------------------------------------------------------------

struct DifferenceSequence {
  SmoothSpace space;
  std::vector<Vector> increments;
};

struct MartingalePath {
  std::vector<Vector> partial_sums;
  std::vector<double> norms;
  /// max_i ||M_i||
  double running_max = 0.0;
};

struct MomentProfile {
  double sigma_sq = 0.0;
  double cq_to_q = 0.0;
  double q = 0.0;
  bool analytic = true;
  /// Monte Carlo standard errors; zero for closed forms.
  double sigma_sq_se = 0.0;
  double cq_to_q_se = 0.0;

  double sigma() const;
  double cq() const;
};

class TruncationLevel {
 public:
  explicit TruncationLevel(double level);
  double value() const noexcept { return level_; }

 private:
  double level_;
};

inline constexpr std::size_t kMomentMonteCarloDraws = 1'000'000;

DifferenceSequence sample_increments(const IncrementDistribution& dist, std::size_t n,
                                     std::uint64_t seed);

/// Summed moment bounds of n iid increments: sigma^2 = n E||xi||^2 and
/// C_q^q = n E||xi||^q. Falls back to Monte Carlo (kMomentMonteCarloDraws
/// draws, seeded by `mc_seed`) when no closed form exists.
MomentProfile moment_profile(const IncrementDistribution& dist, double q, std::size_t n,
                             std::uint64_t mc_seed = 0x5eed);

MartingalePath build_martingale(const DifferenceSequence& diffs);

/// Zeroes increments whose norm exceeds the level; the boundary ||xi|| = L is kept.
DifferenceSequence truncate(const DifferenceSequence& diffs, TruncationLevel level);

// ---------------------------------------------------------------------------
// Doob martingales of coordinate-separable functions.

/// Independent uniform(lo, hi) coordinates.
struct UniformBox {
  std::size_t dim;
  double lo;
  double hi;
};

using InputLaw = std::variant<IncrementDistribution, UniformBox>;

std::size_t input_dimension(const InputLaw& law);
void draw_input(const InputLaw& law, Engine& engine, std::span<double> out);

enum class TermKind { identity, square, constant };

/// g_i(z) = z, z*z (coordinatewise) or a fixed vector.
struct SeparableTerm {
  TermKind kind = TermKind::identity;
  Vector constant;
};

/// f(z) = sum_i g_i(z_i) with values in `target`.
struct SeparableFunction {
  SmoothSpace target;
  std::vector<SeparableTerm> terms;

  Vector evaluate(std::span<const Vector> z) const;
};

struct GeneralFunction {
  SmoothSpace target;
  std::function<Vector(std::span<const Vector>)> f;
};

using FunctionSpec = std::variant<SeparableFunction, GeneralFunction>;

/// M_i = E[f(Z) - E f(Z) | Z_1..Z_i] along `realization`, exact for
/// separable f. Throws unsupported-function otherwise.
MartingalePath doob_martingale(const FunctionSpec& f, std::span<const InputLaw> inputs,
                               std::span<const Vector> realization);

// ---------------------------------------------------------------------------
// Exponential moment lemma for smooth norms.

struct PinelisState {
  double t = 0.0;
  std::vector<double> e_terms;
  /// G_0 = 1, G_i = cosh(t ||M_i||) / prod_{j<=i} (1 + e_j)
  std::vector<double> g_values;
};

PinelisState pinelis_process(const MartingalePath& path, double t, std::span<const double> e_terms);

/// e = D^2 E[exp(t||xi~||) - 1 - t||xi~||] for the (possibly truncated) law.
/// Throws precondition-violation for unbounded laws without truncation.
double pinelis_e_term(const IncrementDistribution& dist, std::optional<TruncationLevel> level,
                      double t);

struct PinelisReport {
  double t = 0.0;
  double smoothness_D = 1.0;
  std::size_t n = 0;
  std::size_t trials = 0;
  bool exact = false;
  double mean_cosh = 0.0;
  double cosh_se = 0.0;
  /// prod_i (1 + e_i)
  double product_bound = 1.0;
  /// E[G_i] for i = 0..n with standard errors; a supermartingale keeps them <= 1.
  std::vector<double> mean_g;
  std::vector<double> g_se;
  bool passed = false;
};

struct PinelisCase {
  IncrementDistribution dist;
  std::optional<TruncationLevel> level;
  std::size_t n = 0;
};

inline constexpr double kPinelisStandardErrors = 3.0;

/// Monte Carlo: E cosh(t||M~_n||) against prod(1 + e_i), within 3 standard errors.
PinelisReport pinelis_check(const PinelisCase& c, std::size_t trials, double t, std::uint64_t seed);

/// Exhaustive enumeration of all 2^n sign patterns of a scalar Rademacher walk.
PinelisReport pinelis_exact_rademacher(std::size_t n, double t, double smoothness_D);

// ---------------------------------------------------------------------------
// Moment interpolation for bounded increments.

/// Discrete law of ||xi~_i||: values[j] with probability probs[j].
struct NormLaw {
  std::vector<double> values;
  std::vector<double> probs;

  double moment(double k) const;
};

struct RioVerdict {
  double k = 0.0;
  double moment_sum = 0.0;
  double bound = 0.0;
  bool passed = false;
};

/// Checks sum_i E||xi~_i||^k <= sigma^{2(q-k)/(q-2)} (2 <= k <= q) or
/// <= L^{k-q} (k >= q) under sum E||xi~||^2 <= sigma^2, sum E||xi~||^q <= 1
/// and ||xi~|| <= L, which are themselves validated first.
RioVerdict rio_moment_check(std::span<const NormLaw> steps, double q, double k, double sigma,
                            double trunc_L);

}  // namespace fuknagaev
