#include "fuknagaev/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "fuknagaev/error.hpp"

namespace fuknagaev {
namespace {

void require_q(double q) {
  if (!(q > 2.0) || !std::isfinite(q)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
}

void require_D(double D) {
  if (!(D >= 1.0) || !std::isfinite(D)) {
    throw Error(ErrorCode::invalid_argument, "smoothness D must be at least 1");
  }
}

void require_open_level(double u) {
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::invalid_level, "u must lie in (0, 1)");
}

void require_moments(double sigma_sq, double cq_to_q) {
  if (!(sigma_sq >= 0.0) || !(cq_to_q >= 0.0) || !std::isfinite(sigma_sq) || !std::isfinite(cq_to_q)) {
    throw Error(ErrorCode::invalid_argument, "moment bounds must be finite and nonnegative");
  }
}

double threshold(double sigma, double cq, double q, double D, double u) {
  return D * sigma * std::sqrt(2.0 * std::log(2.0 / u)) + constant_c(q, D) * cq * std::pow(2.0 / u, 1.0 / q);
}

}  // namespace

double constant_c(double q, double D) {
  require_q(q);
  require_D(D);
  const double indicator_term = q > 3.0 ? D * D * q / 3.0 : 0.0;
  return 1.0 / (2.0 * q) + std::min(1.0 / q, 1.0 / 5.0) + 1.0 + indicator_term;
}

BoundResult confidence_bound(const MomentProfile& profile, double D, double u) {
  require_q(profile.q);
  require_D(D);
  require_open_level(u);
  require_moments(profile.sigma_sq, profile.cq_to_q);
  BoundResult result;
  result.kind = BoundKind::confidence_threshold;
  result.inputs = {profile.q, D, profile.sigma_sq, profile.cq_to_q, u, std::nullopt};
  result.value = threshold(profile.sigma(), profile.cq(), profile.q, D, u);
  return result;
}

BoundResult tail_bound(const MomentProfile& profile, double D, double t) {
  require_q(profile.q);
  require_D(D);
  require_moments(profile.sigma_sq, profile.cq_to_q);
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_threshold, "t must be positive");
  const double c = constant_c(profile.q, D);
  const double polynomial = 2.0 * std::pow(2.0 * c * profile.cq() / t, profile.q);
  const double gaussian =
      profile.sigma_sq > 0.0 ? 2.0 * std::exp(-t * t / (8.0 * D * D * profile.sigma_sq)) : 0.0;
  BoundResult result;
  result.kind = BoundKind::tail_probability;
  result.inputs = {profile.q, D, profile.sigma_sq, profile.cq_to_q, t, std::nullopt};
  result.value = std::clamp(polynomial + gaussian, 0.0, 1.0);
  return result;
}

IndependentSumTerms independent_sum_terms(const IncrementMoments& m, std::size_t n, double D, double u) {
  require_q(m.q);
  require_D(D);
  require_open_level(u);
  require_moments(m.sigma1_sq, m.cq1_to_q);
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be at least 1");
  const double count = static_cast<double>(n);
  const double cq1 = std::pow(m.cq1_to_q, 1.0 / m.q);
  IndependentSumTerms terms;
  terms.gaussian = D * std::sqrt(m.sigma1_sq) * std::sqrt(2.0 * std::log(2.0 / u) / count);
  terms.polynomial = constant_c(m.q, D) * cq1 * std::pow(2.0 / (u * std::pow(count, m.q - 1.0)), 1.0 / m.q);
  return terms;
}

BoundResult independent_sum_bound(const IncrementMoments& m, std::size_t n, double D, double u) {
  const auto terms = independent_sum_terms(m, n, D, u);
  BoundResult result;
  result.kind = BoundKind::confidence_threshold;
  result.inputs = {m.q, D, m.sigma1_sq, m.cq1_to_q, u, n};
  result.value = terms.gaussian + terms.polynomial;
  return result;
}

HolderConstants holder_constants(const HolderSpec& spec, double q) {
  require_q(q);
  if (!(spec.alpha > 0.0 && spec.alpha <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "Hoelder exponent must lie in (0, 1]");
  }
  if (!(spec.holder_L >= 0.0) || !std::isfinite(spec.holder_L)) {
    throw Error(ErrorCode::invalid_argument, "Hoelder constant must be finite and nonnegative");
  }
  double second = 0.0, qth = 0.0;
  for (const auto& [m2, mq] : spec.coordinate_moments) {
    require_moments(m2, mq);
    second += m2;
    qth += mq;
  }
  return {spec.holder_L * spec.holder_L * second, std::pow(spec.holder_L, q) * qth};
}

double uniform_distance_moment(double p) { return 2.0 / ((p + 1.0) * (p + 2.0)); }

double uniform_distance_moment_shortcut(double p) { return std::pow(2.0, p) / (p + 1.0); }

HolderSpec uniform_holder_spec(std::size_t n, double holder_L, double alpha, double q) {
  HolderSpec spec;
  spec.holder_L = holder_L;
  spec.alpha = alpha;
  spec.coordinate_moments.assign(
      n, {uniform_distance_moment(2.0 * alpha), uniform_distance_moment(q * alpha)});
  return spec;
}

BoundResult mcdiarmid_bound(double sigma_sq, double cq_to_q, double q, double D, double u) {
  require_q(q);
  require_D(D);
  require_open_level(u);
  require_moments(sigma_sq, cq_to_q);
  BoundResult result;
  result.kind = BoundKind::confidence_threshold;
  result.inputs = {q, D, sigma_sq, cq_to_q, u, std::nullopt};
  result.value = threshold(std::sqrt(sigma_sq), std::pow(cq_to_q, 1.0 / q), q, D, u);
  return result;
}

SplitConditions tail_split_conditions(const MomentProfile& profile, double D, double t) {
  require_q(profile.q);
  require_D(D);
  if (!(t > 0.0)) throw Error(ErrorCode::invalid_threshold, "t must be positive");
  const double c = constant_c(profile.q, D);
  SplitConditions s;
  const double gaussian =
      profile.sigma_sq > 0.0 ? 2.0 * std::exp(-t * t / (8.0 * D * D * profile.sigma_sq)) : 0.0;
  s.u_star = gaussian + 2.0 * std::pow(2.0 * c * profile.cq() / t, profile.q);
  s.applicable = s.u_star > 0.0 && s.u_star < 1.0;
  if (!s.applicable) return s;
  s.gaussian_part = D * profile.sigma() * std::sqrt(2.0 * std::log(2.0 / s.u_star));
  s.polynomial_part = c * profile.cq() * std::pow(2.0 / s.u_star, 1.0 / profile.q);
  const double half = 0.5 * t * (1.0 + 1e-12);
  s.holds = s.gaussian_part <= half && s.polynomial_part <= half;
  return s;
}

}  // namespace fuknagaev
