#include "fuknagaev/legendre.hpp"

#include <algorithm>
#include <cmath>

#include "fuknagaev/error.hpp"
#include "fuknagaev/minimize.hpp"

namespace fuknagaev {
namespace {

int first_index(double q) { return std::max(0, static_cast<int>(std::ceil(q))); }

double factorial(int k) { return std::exp(std::lgamma(static_cast<double>(k) + 1.0)); }

}  // namespace

double psi_tail(double q, double t) {
  if (!(t >= 0.0)) throw Error(ErrorCode::invalid_argument, "psi_q requires t >= 0");
  if (t == 0.0) return q <= 0.0 ? 1.0 : 0.0;
  const int k0 = first_index(q);
  if (t < 1.0 || t < static_cast<double>(k0)) {
    double term = std::exp(k0 * std::log(t) - std::lgamma(k0 + 1.0));
    double sum = term;
    for (int k = k0 + 1; k < k0 + 100000; ++k) {
      term *= t / k;
      sum += term;
      if (term <= 1e-17 * sum) break;
    }
    return sum;
  }
  double partial = 0.0, term = 1.0;
  for (int k = 0; k < k0; ++k) {
    partial += term;
    term *= t / (k + 1);
  }
  return std::exp(t) - partial;
}

double CgfPieces::ell0(double t) const { return sigma * sigma * t * t / 2.0; }

double CgfPieces::ell1(double t) const {
  double sum = 0.0;
  for (int k = 3; k < q; ++k) {
    sum += std::pow(sigma, 2.0 * (q - k) / (q - 2.0)) * std::pow(t, k) / factorial(k);
  }
  return sum;
}

double CgfPieces::ell2(double t) const { return std::pow(trunc_L, -q) * psi_tail(q, trunc_L * t); }

CgfPieces cgf_pieces(double q, double sigma, double trunc_L) {
  if (!(q > 2.0)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::invalid_argument, "sigma must be finite and nonnegative");
  }
  if (!(trunc_L > 0.0) || !std::isfinite(trunc_L)) {
    throw Error(ErrorCode::invalid_argument, "truncation level must be positive");
  }
  return {q, sigma, trunc_L};
}

double inverse_legendre(const ConvexFunction& psi, double x, double tol, double domain_hi) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw Error(ErrorCode::invalid_argument, "x must be finite and >= 0");
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  const double hi = std::min(domain_hi, 1e12);
  const double lo = std::min(1e-12, hi * 1e-12);
  auto objective = [&](double t) {
    const double v = psi(t);
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
      throw Error(ErrorCode::domain_error, "psi is not finite inside the search bracket");
    }
    return (v + x) / t;
  };
  numeric::MinimizeOptions options;
  options.rel_tol = tol;
  return numeric::minimize_log_unimodal(objective, lo, hi, options).value;
}

double quadratic_closed_form(double sigma, double D, double x) {
  if (sigma == 0.0) return 0.0;
  return std::sqrt(2.0 * x) * D * sigma;
}

double bercu_objective(double c, double v, double x, double t) {
  if (!(t > 0.0 && c * t < 1.0)) throw Error(ErrorCode::domain_error, "t outside (0, 1/c)");
  return v * t / (2.0 * (1.0 - c * t)) + x / t;
}

double bercu_infimum(double c, double v, double x) {
  if (!(c > 0.0) || !(v >= 0.0) || !(x > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "bercu infimum needs c > 0, v >= 0, x > 0");
  }
  return c * x + std::sqrt(2.0 * x * v);
}

double bercu_numeric(double c, double v, double x) {
  bercu_infimum(c, v, x);
  const double hi = (1.0 - 1e-15) / c;
  return numeric::minimize_log_unimodal([&](double t) { return bercu_objective(c, v, x, t); }, hi * 1e-12, hi)
      .value;
}

InequalityVerdict log_poly_check(double x, double q) {
  if (!(x > 0.0) || !(q > 0.0)) throw Error(ErrorCode::invalid_argument, "log-poly check needs x, q > 0");
  InequalityVerdict v;
  v.lhs = std::log(x);
  v.rhs = q / std::exp(1.0) * std::pow(x, 1.0 / q);
  v.passed = v.lhs <= v.rhs + kLogPolySlack * std::abs(v.rhs);
  return v;
}

InequalityVerdict rio36_check(double q, double x) {
  if (!(q > 2.0)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
  if (!(x > 0.0)) throw Error(ErrorCode::invalid_argument, "x must be positive");
  InequalityVerdict v;
  v.lhs = psi_tail(q, x) / x;
  v.rhs = std::exp(x) * std::min(1.0 / q, 1.0 / 5.0);
  v.passed = v.lhs <= v.rhs;
  return v;
}

double truncation_error_bound(double q, double u) {
  if (!(q > 2.0)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::invalid_level, "u must lie in (0, 1)");
  return std::pow(u, -1.0 / q) * std::pow(2.0, 1.0 / q - 1.0);
}

bool truncation_bound_monotone_in_q(double u, std::vector<double> q_grid) {
  std::sort(q_grid.begin(), q_grid.end());
  for (std::size_t i = 1; i < q_grid.size(); ++i) {
    if (truncation_error_bound(q_grid[i], u) > truncation_error_bound(q_grid[i - 1], u)) return false;
  }
  return true;
}

double truncation_error_exact(double q, double u) {
  truncation_error_bound(q, u);
  return std::pow(2.0 / u, 1.0 / q) / (2.0 * q);
}

}  // namespace fuknagaev
