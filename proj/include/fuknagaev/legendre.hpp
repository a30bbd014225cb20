#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fuknagaev {

/// psi_q(t) = sum over integers k >= ceil(q) of t^k / k!.
double psi_tail(double q, double t);

/// Pieces of the cumulant generating function bound.
struct CgfPieces {
  double q = 0.0;
  double sigma = 0.0;
  double trunc_L = 1.0;

  /// sigma^2 t^2 / 2
  double ell0(double t) const;
  /// sum over integers 2 < k < q of sigma^{2(q-k)/(q-2)} t^k / k!
  double ell1(double t) const;
  /// L^{-q} psi_q(L t)
  double ell2(double t) const;
};

CgfPieces cgf_pieces(double q, double sigma, double trunc_L);

using ConvexFunction = std::function<double(double)>;

constexpr double kLegendreTolerance = 1e-10;

/// T[psi](x) = inf_{t > 0} (psi(t) + x) / t, searched over t in (0, domain_hi).
double inverse_legendre(const ConvexFunction& psi, double x, double tol = kLegendreTolerance,
                        double domain_hi = std::numeric_limits<double>::infinity());

/// T[D^2 ell0](x) = sqrt(2x) D sigma.
double quadratic_closed_form(double sigma, double D, double x);

/// v t / (2 (1 - c t)) + x / t for t in (0, 1/c).
double bercu_objective(double c, double v, double x, double t);
/// inf_{0 < t < 1/c} bercu_objective = c x + sqrt(2 x v).
double bercu_infimum(double c, double v, double x);
/// The same infimum found by numeric minimization.
double bercu_numeric(double c, double v, double x);

struct InequalityVerdict {
  double lhs = 0.0;
  double rhs = 0.0;
  bool passed = false;
};

constexpr double kLogPolySlack = 1e-12;

/// log(x) <= (q/e) x^{1/q}, with relative slack kLogPolySlack.
InequalityVerdict log_poly_check(double x, double q);

/// x^{-1} psi_q(x) <= e^x min{1/q, 1/5}.
InequalityVerdict rio36_check(double q, double x);

/// u^{-1/q} 2^{1/q - 1}.
double truncation_error_bound(double q, double u);

/// True when truncation_error_bound(q, u) is nonincreasing along the sorted q grid.
bool truncation_bound_monotone_in_q(double u, std::vector<double> q_grid);

/// The exact approximation term 1 / (u q L^{q-1}) = L / (2q) with L = (2/u)^{1/q}.
double truncation_error_exact(double q, double u);

enum class Relation { less_equal, approx_equal, exact_equal };

struct ChainStep {
  int step = 0;
  std::string claim;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::less_equal;
  bool applicable = true;
  bool passed = true;
};

constexpr double kChainSlack = 1e-9;
constexpr double kChainEqualityTolerance = 1e-8;

struct ProofChainReport {
  double q = 0.0;
  double D = 1.0;
  double sigma = 0.0;
  double u = 0.0;
  double x_hat = 0.0;
  double trunc_L = 0.0;
  double alpha_qD = 0.0;
  std::vector<ChainStep> steps;
  /// 1/(2q) + alpha_qD + 1{q > 3} D^2 q / 3.
  double final_coefficient = 0.0;
  /// Numeric T[D^2 (ell0 + ell1 + ell2)](x_hat) plus the approximation term.
  double numeric_quantile_bound = 0.0;
  /// D sigma sqrt(2 x_hat) + constant_c(q, D) L.
  double displayed_bound = 0.0;
  std::optional<int> failing_step;
  bool passed() const { return !failing_step.has_value(); }
};

ProofChainReport proof_chain(double q, double D, double sigma, double u);

}  // namespace fuknagaev
