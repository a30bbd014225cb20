#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "fuknagaev/error.hpp"
#include "fuknagaev/stochastic.hpp"

namespace fuknagaev {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// exp(s) - 1 - s
double phi(double s) { return std::expm1(s) - s; }

template <class F>
double integrate(F f, double a, double b) {
  if (!(b > a)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14);
}

}  // namespace

PinelisState pinelis_process(const MartingalePath& path, double t, std::span<const double> e_terms) {
  if (e_terms.size() != path.norms.size()) {
    throw Error(ErrorCode::invalid_argument, "one e-term per step is required");
  }
  PinelisState state;
  state.t = t;
  state.e_terms.assign(e_terms.begin(), e_terms.end());
  state.g_values.reserve(path.norms.size() + 1);
  state.g_values.push_back(1.0);
  double product = 1.0;
  for (std::size_t i = 0; i < path.norms.size(); ++i) {
    product *= 1.0 + e_terms[i];
    state.g_values.push_back(std::cosh(t * path.norms[i]) / product);
  }
  return state;
}

double pinelis_e_term(const IncrementDistribution& dist, std::optional<TruncationLevel> level,
                      double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_argument, "t must be positive");
  if (!level && !norm_bound(dist)) {
    throw Error(ErrorCode::precondition_violation,
                "unbounded increments need a truncation level: " + describe(dist));
  }
  const double cap = level ? level->value() : std::numeric_limits<double>::infinity();
  const auto& space = dist.space;
  const double d2 = space.smoothness() * space.smoothness();
  const double expectation = std::visit(
      overloaded{
          [&](const RademacherScale&) {
            const double r = *norm_bound(dist);
            return r <= cap ? phi(t * r) : 0.0;
          },
          [&](const UniformCube& k) {
            if (space.dimension() != 1) {
              throw Error(ErrorCode::invalid_argument,
                          "the e-term of a multi-dimensional uniform cube has no closed form");
            }
            const double m = std::min(k.half_width, cap);
            return integrate([&](double s) { return phi(t * s); }, 0.0, m) / k.half_width;
          },
          [&](const SymmetricPareto& k) {
            return integrate(
                [&](double r) { return phi(t * r) * k.alpha * std::pow(r, -k.alpha - 1.0); }, 1.0,
                cap);
          },
          [&](const Gaussian& k) {
            if (space.dimension() != 1 && space.norm_kind() != NormKind::euclidean) {
              throw Error(ErrorCode::invalid_argument,
                          "the e-term of a Gaussian in l^p has no closed form");
            }
            // ||xi|| = scale * chi_d
            const double half_d = 0.5 * static_cast<double>(space.dimension());
            const double log_norm = (half_d - 1.0) * std::log(2.0) + std::lgamma(half_d);
            auto density = [&](double r) {
              const double s = r / k.scale;
              return std::exp((2.0 * half_d - 1.0) * std::log(s) - 0.5 * s * s - log_norm) / k.scale;
            };
            return integrate([&](double r) { return phi(t * r) * density(r); }, 0.0, cap);
          },
          [&](const StudentT&) -> double {
            throw Error(ErrorCode::invalid_argument, "the Student t e-term is not implemented");
          },
      },
      dist.kind);
  return d2 * expectation;
}

PinelisReport pinelis_check(const PinelisCase& c, std::size_t trials, double t, std::uint64_t seed) {
  if (trials < 2) throw Error(ErrorCode::invalid_argument, "at least two trials are required");
  const double e = pinelis_e_term(c.dist, c.level, t);
  const auto& space = c.dist.space;

  PinelisReport report;
  report.t = t;
  report.smoothness_D = space.smoothness();
  report.n = c.n;
  report.trials = trials;
  report.product_bound = std::pow(1.0 + e, static_cast<double>(c.n));

  std::vector<double> sum_g(c.n + 1, 0.0), sum_g2(c.n + 1, 0.0);
  double sum_cosh = 0.0, sum_cosh2 = 0.0;
  const std::vector<double> e_terms(c.n, e);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    double value = 1.0;
    std::vector<double> g(1, 1.0);
    if (c.n > 0) {
      auto diffs = sample_increments(c.dist, c.n, derive_seed(seed, trial));
      if (c.level) diffs = truncate(diffs, *c.level);
      const auto path = build_martingale(diffs);
      value = std::cosh(t * path.norms.back());
      g = pinelis_process(path, t, e_terms).g_values;
    }
    sum_cosh += value;
    sum_cosh2 += value * value;
    for (std::size_t i = 0; i <= c.n; ++i) {
      sum_g[i] += g[i];
      sum_g2[i] += g[i] * g[i];
    }
  }
  const double count = static_cast<double>(trials);
  auto stderr_of = [count](double sum, double sumsq) {
    const double mean = sum / count;
    return std::sqrt(std::max(0.0, sumsq / count - mean * mean) / (count - 1.0));
  };
  report.mean_cosh = sum_cosh / count;
  report.cosh_se = stderr_of(sum_cosh, sum_cosh2);
  report.passed = report.mean_cosh <= report.product_bound + kPinelisStandardErrors * report.cosh_se;
  for (std::size_t i = 0; i <= c.n; ++i) {
    report.mean_g.push_back(sum_g[i] / count);
    report.g_se.push_back(stderr_of(sum_g[i], sum_g2[i]));
    report.passed = report.passed &&
                    report.mean_g.back() <= 1.0 + kPinelisStandardErrors * report.g_se.back();
  }
  return report;
}

PinelisReport pinelis_exact_rademacher(std::size_t n, double t, double smoothness_D) {
  if (n > 24) throw Error(ErrorCode::invalid_argument, "enumeration is limited to n <= 24");
  PinelisReport report;
  report.t = t;
  report.smoothness_D = smoothness_D;
  report.n = n;
  report.exact = true;
  const double e = smoothness_D * smoothness_D * phi(t);
  report.product_bound = std::pow(1.0 + e, static_cast<double>(n));

  const std::size_t outcomes = std::size_t{1} << n;
  report.trials = outcomes;
  std::vector<double> sum_g(n + 1, 0.0);
  double sum_cosh = 0.0;
  for (std::size_t pattern = 0; pattern < outcomes; ++pattern) {
    double m = 0.0, product = 1.0;
    sum_g[0] += 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      m += ((pattern >> i) & 1U) != 0 ? 1.0 : -1.0;
      product *= 1.0 + e;
      sum_g[i + 1] += std::cosh(t * std::fabs(m)) / product;
    }
    sum_cosh += std::cosh(t * std::fabs(m));
  }
  const double count = static_cast<double>(outcomes);
  report.mean_cosh = sum_cosh / count;
  report.passed = report.mean_cosh <= report.product_bound * (1.0 + 1e-12);
  for (double s : sum_g) {
    report.mean_g.push_back(s / count);
    report.g_se.push_back(0.0);
    report.passed = report.passed && report.mean_g.back() <= 1.0 + 1e-12;
  }
  return report;
}

double NormLaw::moment(double k) const {
  double total = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (probs[j] > 0.0) total += probs[j] * std::pow(values[j], k);
  }
  return total;
}

RioVerdict rio_moment_check(std::span<const NormLaw> steps, double q, double k, double sigma,
                            double trunc_L) {
  constexpr double slack = 1e-12;
  if (!(q > 2.0) || !(k >= 2.0) || !(sigma >= 0.0) || !(trunc_L > 0.0)) {
    throw Error(ErrorCode::precondition_violation, "need q > 2, k >= 2, sigma >= 0, L > 0");
  }
  double second = 0.0, qth = 0.0;
  for (const auto& law : steps) {
    if (law.values.size() != law.probs.size()) {
      throw Error(ErrorCode::precondition_violation, "values and probabilities differ in length");
    }
    double mass = 0.0;
    for (std::size_t j = 0; j < law.values.size(); ++j) {
      if (law.values[j] < 0.0 || law.probs[j] < 0.0) {
        throw Error(ErrorCode::precondition_violation, "norm values and probabilities must be >= 0");
      }
      if (law.probs[j] > 0.0 && law.values[j] > trunc_L * (1.0 + slack)) {
        throw Error(ErrorCode::precondition_violation, "norm value exceeds the truncation level");
      }
      mass += law.probs[j];
    }
    if (std::fabs(mass - 1.0) > 1e-12) {
      throw Error(ErrorCode::precondition_violation, "probabilities must sum to one");
    }
    second += law.moment(2.0);
    qth += law.moment(q);
  }
  if (second > sigma * sigma * (1.0 + slack) || qth > 1.0 + slack) {
    throw Error(ErrorCode::precondition_violation,
                "normalized moment assumptions fail: need sum E^2 <= sigma^2 and sum E^q <= 1");
  }

  RioVerdict verdict;
  verdict.k = k;
  for (const auto& law : steps) verdict.moment_sum += law.moment(k);
  verdict.bound = k <= q ? std::pow(sigma, 2.0 * (q - k) / (q - 2.0)) : std::pow(trunc_L, k - q);
  verdict.passed = verdict.moment_sum <= verdict.bound * (1.0 + slack);
  return verdict;
}

}  // namespace fuknagaev
