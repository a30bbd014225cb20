#include "fuknagaev/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "fuknagaev/bounds.hpp"
#include "fuknagaev/error.hpp"
#include "fuknagaev/kernels.hpp"
#include "fuknagaev/quantile.hpp"

namespace fuknagaev {
namespace {

constexpr std::size_t kLanes = 64;
constexpr std::uint64_t kBootstrapStream = 0xb0075742ULL;

void validate_grid(const std::vector<double>& grid) {
  if (grid.empty()) throw Error(ErrorCode::invalid_argument, "level grid must be nonempty");
  for (double u : grid) {
    if (!(u >= kMinLevel && u <= kMaxLevel)) {
      throw Error(ErrorCode::invalid_level, "levels must lie in [1e-6, 0.99]");
    }
  }
}

void validate_common(std::size_t trials, double confidence) {
  if (trials < kMinTrials) throw Error(ErrorCode::invalid_count, "trials must be at least 100");
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "confidence must lie in (0, 1)");
  }
}

unsigned worker_count(unsigned requested, std::size_t blocks) {
  unsigned n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(blocks, 1)));
}

/// Runs body(block) for every block index, distributing blocks over threads.
template <typename Body>
void parallel_blocks(std::size_t blocks, unsigned threads, Body&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t b = next++; b < blocks; b = next++) body(b);
  };
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

VerificationRow make_row(double level, double bound, std::span<const double> statistic, double confidence) {
  VerificationRow row;
  row.level = level;
  row.bound = bound;
  row.trials = statistic.size();
  row.exceed = kernels::count_greater(statistic, bound);
  row.rate = static_cast<double>(row.exceed) / static_cast<double>(row.trials);
  row.cp_upper = clopper_pearson_upper(row.exceed, row.trials, confidence);
  row.passed = row.cp_upper <= level;
  return row;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double clopper_pearson_upper(std::size_t k, std::size_t N, double confidence) {
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw Error(ErrorCode::invalid_argument, "confidence must lie in (0, 1)");
  }
  if (k > N) throw Error(ErrorCode::invalid_count, "successes exceed trials");
  if (k == N) return 1.0;
  return boost::math::ibeta_inv(static_cast<double>(k) + 1.0, static_cast<double>(N - k), confidence);
}

void validate(const CampaignConfig& config) {
  validate_common(config.trials, config.confidence);
  validate_grid(config.u_grid);
  if (config.n == 0) throw Error(ErrorCode::invalid_argument, "n must be at least 1");
  if (!(config.q > 2.0) || !std::isfinite(config.q)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
  if (!(config.D >= config.dist.space.smoothness())) {
    throw Error(ErrorCode::invalid_argument, "D must be at least the smoothness constant of the space");
  }
  if (config.q >= tail_index(config.dist)) {
    throw Error(ErrorCode::infinite_moment, "q-th moment of the increment law is infinite");
  }
}

bool VerificationReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const VerificationRow& r) { return r.passed; });
}

std::vector<double> simulate_running_max(const CampaignConfig& config) {
  validate(config);
  const SmoothSpace& space = config.dist.space;
  const std::size_t dim = space.dimension();
  const std::size_t blocks = (config.trials + kLanes - 1) / kLanes;
  const double p = space.norm_kind() == NormKind::euclidean ? 2.0 : space.exponent();
  std::vector<double> running_max(config.trials);

  parallel_blocks(blocks, worker_count(config.threads, blocks), [&](std::size_t block) {
    const std::size_t first = block * kLanes;
    const std::size_t lanes = std::min(kLanes, config.trials - first);
    std::vector<double> data(config.n * dim * lanes);
    std::vector<double> increment(dim);
    for (std::size_t l = 0; l < lanes; ++l) {
      Engine engine = make_engine(config.seed, first + l);
      for (std::size_t s = 0; s < config.n; ++s) {
        draw_increment(config.dist, engine, increment);
        for (std::size_t c = 0; c < dim; ++c) data[(s * dim + c) * lanes + l] = increment[c];
      }
    }
    std::vector<double> max_power(lanes);
    kernels::batch_max_power_sum({data, config.n, dim, lanes}, p, max_power);
    for (std::size_t l = 0; l < lanes; ++l) running_max[first + l] = space.norm_from_power(max_power[l]);
  });
  return running_max;
}

VerificationReport verify_confidence(const CampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config);
  const MomentProfile profile = moment_profile(config.dist, config.q, config.n);
  const auto running_max = simulate_running_max(config);

  VerificationReport report;
  report.campaign = "confidence";
  report.seed = config.seed;
  report.config = {{"dist", describe(config.dist)},
                   {"n", static_cast<std::uint64_t>(config.n)},
                   {"trials", static_cast<std::uint64_t>(config.trials)},
                   {"q", config.q},
                   {"D", config.D},
                   {"sigma_sq", profile.sigma_sq},
                   {"cq_to_q", profile.cq_to_q},
                   {"confidence", config.confidence}};
  for (double u : config.u_grid) {
    const double bound = confidence_bound(profile, config.D, u).value;
    report.rows.push_back(make_row(u, bound, running_max, config.confidence));
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

std::vector<TightnessRow> tightness(const CampaignConfig& config) {
  validate(config);
  const MomentProfile profile = moment_profile(config.dist, config.q, config.n);
  const EmpiricalSample sample(simulate_running_max(config));
  const auto sorted = sample.values();
  const std::size_t N = sorted.size();

  // Bootstrap replicates reuse one index stream per replicate for every level.
  std::vector<std::vector<double>> replicates;
  replicates.reserve(kBootstrapReplicates);
  for (std::size_t b = 0; b < kBootstrapReplicates; ++b) {
    Engine engine = make_engine(derive_seed(config.seed, kBootstrapStream), b);
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    std::vector<std::size_t> idx(N);
    for (auto& i : idx) i = pick(engine);
    std::sort(idx.begin(), idx.end());
    std::vector<double> values(N);
    for (std::size_t i = 0; i < N; ++i) values[i] = sorted[idx[i]];
    replicates.push_back(std::move(values));
  }

  std::vector<TightnessRow> rows;
  for (double u : config.u_grid) {
    TightnessRow row;
    row.level = u;
    row.bound = confidence_bound(profile, config.D, u).value;
    row.empirical_quantile = quantile_q(sample, u);
    if (row.empirical_quantile > 0.0) {
      row.ratio = row.bound / row.empirical_quantile;
      double sum = 0.0, sum_sq = 0.0;
      for (const auto& rep : replicates) {
        const double qb = quantile_q(EmpiricalSample(rep), u);
        const double r = qb > 0.0 ? row.bound / qb : *row.ratio;
        sum += r;
        sum_sq += r * r;
      }
      const double B = static_cast<double>(replicates.size());
      const double mean = sum / B;
      row.ratio_se = std::sqrt(std::max(0.0, sum_sq / B - mean * mean));
      row.consistent = *row.ratio >= 1.0 - 3.0 * row.ratio_se;
    }
    rows.push_back(row);
  }
  return rows;
}

std::optional<double> crossover_scan(const MomentProfile& profile, double D, double t_lo, double t_hi) {
  if (!(t_lo > 0.0 && t_lo < t_hi)) throw Error(ErrorCode::invalid_argument, "bracket must satisfy 0 < t_lo < t_hi");
  if (!(profile.sigma_sq > 0.0)) return std::nullopt;
  const double c = constant_c(profile.q, D);
  const double cq = profile.cq();
  auto f = [&](double t) {
    return 2.0 * std::exp(-t * t / (8.0 * D * D * profile.sigma_sq)) - 2.0 * std::pow(2.0 * c * cq / t, profile.q);
  };
  constexpr int kScan = 4096;
  const double a = std::log(t_lo), b = std::log(t_hi);
  std::optional<std::pair<double, double>> bracket;
  double prev_t = t_lo, prev_f = f(t_lo);
  for (int i = 1; i <= kScan; ++i) {
    const double t = i == kScan ? t_hi : std::exp(a + (b - a) * i / kScan);
    const double ft = f(t);
    if ((prev_f < 0.0) != (ft < 0.0)) bracket = {prev_t, t};
    prev_t = t;
    prev_f = ft;
  }
  if (!bracket) return std::nullopt;
  auto [lo, hi] = *bracket;
  const bool lo_negative = f(lo) < 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == lo_negative) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

VerificationReport verify_mcdiarmid(const DoobCampaignConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate_common(config.trials, config.confidence);
  validate_grid(config.u_grid);
  if (config.inputs == 0) throw Error(ErrorCode::invalid_argument, "at least one input is required");

  const SmoothSpace target = make_euclidean(1);
  SeparableFunction f{target, std::vector<SeparableTerm>(config.inputs, SeparableTerm{TermKind::square, {}})};
  const FunctionSpec spec = f;
  const std::vector<InputLaw> laws(config.inputs, UniformBox{1, 0.0, 1.0});

  const std::size_t blocks = (config.trials + kLanes - 1) / kLanes;
  std::vector<double> running_max(config.trials);
  parallel_blocks(blocks, worker_count(0, blocks), [&](std::size_t block) {
    const std::size_t first = block * kLanes;
    const std::size_t last = std::min(config.trials, first + kLanes);
    std::vector<Vector> z(config.inputs, Vector(1));
    for (std::size_t j = first; j < last; ++j) {
      Engine engine = make_engine(config.seed, j);
      for (std::size_t i = 0; i < config.inputs; ++i) draw_input(laws[i], engine, z[i]);
      running_max[j] = doob_martingale(spec, laws, z).running_max;
    }
  });

  VerificationReport report;
  report.campaign = "mcdiarmid";
  report.seed = config.seed;
  report.config = {{"function", std::string("sum of squares of uniform(0,1) inputs")},
                   {"inputs", static_cast<std::uint64_t>(config.inputs)},
                   {"trials", static_cast<std::uint64_t>(config.trials)},
                   {"q", config.q},
                   {"D", config.D},
                   {"sigma_sq", config.sigma_sq},
                   {"cq_to_q", config.cq_to_q},
                   {"confidence", config.confidence}};
  for (double u : config.u_grid) {
    const double bound = mcdiarmid_bound(config.sigma_sq, config.cq_to_q, config.q, config.D, u).value;
    report.rows.push_back(make_row(u, bound, running_max, config.confidence));
  }
  report.runtime_seconds = seconds_since(start);
  return report;
}

}  // namespace fuknagaev
