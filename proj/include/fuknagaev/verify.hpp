#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fuknagaev/stochastic.hpp"

namespace fuknagaev {

/// Exact one-sided upper Clopper-Pearson limit for k successes in N trials.
double clopper_pearson_upper(std::size_t k, std::size_t N, double confidence);

inline constexpr std::size_t kMinTrials = 100;
inline constexpr double kMinLevel = 1e-6;
inline constexpr double kMaxLevel = 0.99;

struct CampaignConfig {
  IncrementDistribution dist;
  std::size_t n = 50;
  std::size_t trials = 100'000;
  double q = 4.0;
  double D = 1.0;
  std::vector<double> u_grid{};
  std::uint64_t seed = 0;
  double confidence = 0.99;
  /// Worker threads; 0 uses the hardware concurrency.
  unsigned threads = 0;
};

/// Throws on trials < kMinTrials, empty or out-of-range grids, q outside
/// (2, tail index) and non-finite parameters.
void validate(const CampaignConfig& config);

using ConfigValue = std::variant<double, std::uint64_t, std::string>;

struct VerificationRow {
  double level = 0.0;
  double bound = 0.0;
  std::size_t exceed = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  double cp_upper = 0.0;
  bool passed = false;
};

struct VerificationReport {
  std::string campaign;
  std::map<std::string, ConfigValue> config;
  std::vector<VerificationRow> rows;
  std::uint64_t seed = 0;
  /// Wall time; not part of the emitted report.
  double runtime_seconds = 0.0;
  bool passed() const;
};

/// max_i ||M_i|| for every trial. Trial j draws its increments from
/// make_engine(seed, j), so the result is independent of the thread count.
std::vector<double> simulate_running_max(const CampaignConfig& config);

VerificationReport verify_confidence(const CampaignConfig& config);

struct TightnessRow {
  double level = 0.0;
  double bound = 0.0;
  double empirical_quantile = 0.0;
  /// B(u) / Q(u); empty when the empirical quantile is zero.
  std::optional<double> ratio;
  double ratio_se = 0.0;
  bool consistent = true;
};

inline constexpr std::size_t kBootstrapReplicates = 200;

std::vector<TightnessRow> tightness(const CampaignConfig& config);

/// Last sign change in (t_lo, t_hi) of 2 exp(-t^2/(8 D^2 sigma^2)) - 2 (2 c C_q / t)^q,
/// refined by bisection.
std::optional<double> crossover_scan(const MomentProfile& profile, double D, double t_lo, double t_hi);

/// Doob martingale of f(z) = sum_i z_i^2 over independent uniform(0,1) inputs.
struct DoobCampaignConfig {
  std::size_t inputs = 10;
  std::size_t trials = 100'000;
  double q = 4.0;
  double D = 1.0;
  double sigma_sq = 0.0;
  double cq_to_q = 0.0;
  std::vector<double> u_grid{};
  std::uint64_t seed = 0;
  double confidence = 0.99;
};

/// Counts trials whose running max of the Doob martingale exceeds the
/// McDiarmid threshold; the running max dominates ||f(Z) - E f(Z)||.
VerificationReport verify_mcdiarmid(const DoobCampaignConfig& config);

}  // namespace fuknagaev
