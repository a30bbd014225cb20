#include "fuknagaev/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fuknagaev/error.hpp"

namespace fuknagaev {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// E||Z||_2^p for Z ~ N(0, I_d).
double gaussian_radius_moment(std::size_t d, double p) {
  const double half_d = 0.5 * static_cast<double>(d);
  return std::exp(0.5 * p * std::log(2.0) + std::lgamma(half_d + 0.5 * p) - std::lgamma(half_d));
}

bool radial_closed_form(const SmoothSpace& space) {
  return space.dimension() == 1 || space.norm_kind() == NormKind::euclidean ||
         space.exponent() == 2.0;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::invalid_argument, std::string(name) + " must be positive and finite");
  }
}

}  // namespace

IncrementDistribution make_distribution(IncrementKind kind, SmoothSpace space) {
  std::visit(overloaded{
                 [](const SymmetricPareto& k) {
                   if (!(k.alpha > 2.0) || !std::isfinite(k.alpha)) {
                     throw Error(ErrorCode::invalid_argument, "Pareto tail index must exceed 2");
                   }
                 },
                 [](const StudentT& k) {
                   if (!(k.dof > 2.0) || !std::isfinite(k.dof)) {
                     throw Error(ErrorCode::invalid_argument, "Student t dof must exceed 2");
                   }
                 },
                 [](const RademacherScale& k) { require_positive(k.scale, "Rademacher scale"); },
                 [](const UniformCube& k) { require_positive(k.half_width, "uniform half width"); },
                 [](const Gaussian& k) { require_positive(k.scale, "Gaussian scale"); },
             },
             kind);
  return IncrementDistribution{kind, space};
}

std::string describe(const IncrementDistribution& dist) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const SymmetricPareto& k) { out << "symmetric_pareto(alpha=" << k.alpha << ")"; },
                 [&](const StudentT& k) { out << "student_t(dof=" << k.dof << ")"; },
                 [&](const RademacherScale& k) { out << "rademacher_scale(scale=" << k.scale << ")"; },
                 [&](const UniformCube& k) { out << "uniform_cube(half_width=" << k.half_width << ")"; },
                 [&](const Gaussian& k) { out << "gaussian(scale=" << k.scale << ")"; },
             },
             dist.kind);
  const auto& s = dist.space;
  out << " on ";
  if (s.norm_kind() == NormKind::euclidean) {
    out << "euclidean(d=" << s.dimension() << ")";
  } else {
    out << "lp(d=" << s.dimension() << ", p=" << s.exponent() << ")";
  }
  return out.str();
}

double tail_index(const IncrementDistribution& dist) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  return std::visit(overloaded{
                        [](const SymmetricPareto& k) { return k.alpha; },
                        [](const StudentT& k) { return k.dof; },
                        [](const auto&) { return inf; },
                    },
                    dist.kind);
}

std::optional<double> norm_bound(const IncrementDistribution& dist) {
  const double d = static_cast<double>(dist.space.dimension());
  const double p = dist.space.exponent();
  return std::visit(overloaded{
                        [&](const RademacherScale& k) -> std::optional<double> {
                          return k.scale * std::pow(d, 1.0 / p);
                        },
                        [&](const UniformCube& k) -> std::optional<double> {
                          return k.half_width * std::pow(d, 1.0 / p);
                        },
                        [](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    dist.kind);
}

std::optional<double> analytic_norm_moment(const IncrementDistribution& dist, double p) {
  if (p >= tail_index(dist)) {
    std::ostringstream msg;
    msg << "moment of order " << p << " is infinite for " << describe(dist);
    throw Error(ErrorCode::infinite_moment, msg.str());
  }
  const auto& space = dist.space;
  const std::size_t d = space.dimension();
  return std::visit(
      overloaded{
          [&](const SymmetricPareto& k) -> std::optional<double> { return k.alpha / (k.alpha - p); },
          [&](const StudentT& k) -> std::optional<double> {
            if (!radial_closed_form(space)) return std::nullopt;
            const double half_nu = 0.5 * k.dof;
            const double mixing =
                std::exp(0.5 * p * std::log(half_nu) + std::lgamma(half_nu - 0.5 * p) - std::lgamma(half_nu));
            return gaussian_radius_moment(d, p) * mixing;
          },
          [&](const RademacherScale&) -> std::optional<double> {
            return std::pow(*norm_bound(dist), p);
          },
          [&](const UniformCube& k) -> std::optional<double> {
            if (d == 1 || p == space.exponent()) {
              return static_cast<double>(d) * std::pow(k.half_width, p) / (p + 1.0);
            }
            return std::nullopt;
          },
          [&](const Gaussian& k) -> std::optional<double> {
            if (!radial_closed_form(space)) return std::nullopt;
            return std::pow(k.scale, p) * gaussian_radius_moment(d, p);
          },
      },
      dist.kind);
}

void draw_increment(const IncrementDistribution& dist, Engine& engine, std::span<double> out) {
  const auto& space = dist.space;
  std::visit(overloaded{
                 [&](const SymmetricPareto& k) {
                   const double radius = std::pow(uniform_open01(engine), -1.0 / k.alpha);
                   if (out.size() == 1) {
                     out[0] = (engine() >> 63) != 0 ? radius : -radius;
                     return;
                   }
                   std::normal_distribution<double> normal;
                   double n = 0.0;
                   do {
                     for (double& x : out) x = normal(engine);
                     n = space.norm(out);
                   } while (n == 0.0);
                   for (double& x : out) x *= radius / n;
                 },
                 [&](const StudentT& k) {
                   std::normal_distribution<double> normal;
                   std::chi_squared_distribution<double> chi(k.dof);
                   for (double& x : out) x = normal(engine);
                   const double w = chi(engine);
                   const double factor = std::sqrt(k.dof / w);
                   for (double& x : out) x *= factor;
                 },
                 [&](const RademacherScale& k) {
                   for (double& x : out) x = (engine() >> 63) != 0 ? k.scale : -k.scale;
                 },
                 [&](const UniformCube& k) {
                   for (double& x : out) x = k.half_width * (2.0 * uniform_open01(engine) - 1.0);
                 },
                 [&](const Gaussian& k) {
                   std::normal_distribution<double> normal(0.0, k.scale);
                   for (double& x : out) x = normal(engine);
                 },
             },
             dist.kind);
}

double MomentProfile::sigma() const { return std::sqrt(sigma_sq); }

double MomentProfile::cq() const { return std::pow(cq_to_q, 1.0 / q); }

TruncationLevel::TruncationLevel(double level) : level_(level) {
  if (!(level > 0.0)) throw Error(ErrorCode::invalid_argument, "truncation level must be positive");
}

DifferenceSequence sample_increments(const IncrementDistribution& dist, std::size_t n,
                                     std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be at least 1");
  Engine engine = make_engine(seed);
  DifferenceSequence diffs{dist.space, {}};
  diffs.increments.assign(n, Vector(dist.space.dimension()));
  for (auto& v : diffs.increments) draw_increment(dist, engine, v);
  return diffs;
}

MomentProfile moment_profile(const IncrementDistribution& dist, double q, std::size_t n,
                             std::uint64_t mc_seed) {
  if (!(q > 2.0)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be at least 1");
  const auto second = analytic_norm_moment(dist, 2.0);
  const auto qth = analytic_norm_moment(dist, q);
  const double count = static_cast<double>(n);

  MomentProfile profile;
  profile.q = q;
  if (second && qth) {
    profile.sigma_sq = count * *second;
    profile.cq_to_q = count * *qth;
    return profile;
  }

  // Monte Carlo for whichever moment lacks a closed form.
  Engine engine = make_engine(mc_seed);
  Vector xi(dist.space.dimension());
  double s2 = 0.0, s2sq = 0.0, sq = 0.0, sqsq = 0.0;
  for (std::size_t k = 0; k < kMomentMonteCarloDraws; ++k) {
    draw_increment(dist, engine, xi);
    const double r = dist.space.norm(xi);
    const double a = r * r, b = std::pow(r, q);
    s2 += a;
    s2sq += a * a;
    sq += b;
    sqsq += b * b;
  }
  const double draws = static_cast<double>(kMomentMonteCarloDraws);
  auto se = [draws](double sum, double sumsq) {
    const double mean = sum / draws;
    return std::sqrt(std::max(0.0, sumsq / draws - mean * mean) / draws);
  };
  profile.analytic = false;
  profile.sigma_sq = count * (second ? *second : s2 / draws);
  profile.sigma_sq_se = second ? 0.0 : count * se(s2, s2sq);
  profile.cq_to_q = count * (qth ? *qth : sq / draws);
  profile.cq_to_q_se = qth ? 0.0 : count * se(sq, sqsq);
  return profile;
}

MartingalePath build_martingale(const DifferenceSequence& diffs) {
  if (diffs.increments.empty()) {
    throw Error(ErrorCode::invalid_argument, "difference sequence must be nonempty");
  }
  const std::size_t d = diffs.space.dimension();
  MartingalePath path;
  path.partial_sums.reserve(diffs.increments.size());
  path.norms.reserve(diffs.increments.size());
  Vector running(d, 0.0);
  for (const auto& xi : diffs.increments) {
    if (!diffs.space.contains(xi)) {
      throw Error(ErrorCode::invalid_argument, "increment does not belong to the declared space");
    }
    for (std::size_t c = 0; c < d; ++c) running[c] += xi[c];
    path.partial_sums.push_back(running);
    const double norm = diffs.space.norm(running);
    path.norms.push_back(norm);
    path.running_max = std::max(path.running_max, norm);
  }
  return path;
}

DifferenceSequence truncate(const DifferenceSequence& diffs, TruncationLevel level) {
  DifferenceSequence out{diffs.space, diffs.increments};
  for (auto& xi : out.increments) {
    if (diffs.space.norm(xi) > level.value()) std::fill(xi.begin(), xi.end(), 0.0);
  }
  return out;
}

}  // namespace fuknagaev
