#include <algorithm>
#include <cmath>

#include "fuknagaev/bounds.hpp"
#include "fuknagaev/error.hpp"
#include "fuknagaev/legendre.hpp"

namespace fuknagaev {
namespace {

bool holds(const ChainStep& s) {
  switch (s.relation) {
    case Relation::less_equal:
      return s.lhs <= s.rhs + kChainSlack * std::abs(s.rhs);
    case Relation::approx_equal:
      return std::abs(s.lhs - s.rhs) <= kChainEqualityTolerance * std::max(std::abs(s.rhs), 1e-300);
    case Relation::exact_equal:
      return s.lhs == s.rhs;
  }
  return false;
}

class ChainRecorder {
 public:
  explicit ChainRecorder(ProofChainReport& report) : report_(report) {}

  void add(int step, std::string claim, double lhs, double rhs, Relation relation = Relation::less_equal) {
    ChainStep s{step, std::move(claim), lhs, rhs, relation, true, true};
    s.passed = holds(s);
    if (!s.passed && !report_.failing_step) report_.failing_step = step;
    report_.steps.push_back(std::move(s));
  }

  void skip(int step, std::string claim) {
    report_.steps.push_back({step, std::move(claim), 0.0, 0.0, Relation::less_equal, false, true});
  }

 private:
  ProofChainReport& report_;
};

}  // namespace

ProofChainReport proof_chain(double q, double D, double sigma, double u) {
  if (!(q > 2.0) || !std::isfinite(q)) throw Error(ErrorCode::invalid_q, "q must exceed 2");
  if (!(D >= 1.0) || !std::isfinite(D)) throw Error(ErrorCode::invalid_argument, "D must be at least 1");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw Error(ErrorCode::invalid_argument, "sigma must be positive");
  if (!(u > 0.0 && u < 1.0)) throw Error(ErrorCode::invalid_level, "u must lie in (0, 1)");

  ProofChainReport r;
  r.q = q;
  r.D = D;
  r.sigma = sigma;
  r.u = u;
  r.x_hat = std::log(2.0 / u);
  r.trunc_L = std::pow(2.0 / u, 1.0 / q);
  const double D2 = D * D;
  const double min_term = std::min(1.0 / q, 1.0 / 5.0);
  r.alpha_qD = D2 * min_term + 1.0;
  const bool high = q > 3.0;
  r.final_coefficient = 1.0 / (2.0 * q) + D2 * min_term + 1.0 + (high ? D2 * q / 3.0 : 0.0);

  const double x = r.x_hat, L = r.trunc_L, e = std::exp(1.0);
  const CgfPieces p = cgf_pieces(q, sigma, L);
  auto T = [&](auto&& psi, double domain_hi = std::numeric_limits<double>::infinity()) {
    return inverse_legendre(psi, x, kLegendreTolerance, domain_hi);
  };
  const double T0 = T([&](double t) { return D2 * p.ell0(t); });
  const double T2 = T([&](double t) { return D2 * p.ell2(t); });
  const double T12 = T([&](double t) { return D2 * (p.ell1(t) + p.ell2(t)); });
  const double T01 = T([&](double t) { return D2 * (p.ell0(t) + p.ell1(t)); });
  const double Tfull = T([&](double t) { return D2 * (p.ell0(t) + p.ell1(t) + p.ell2(t)); });
  const double gaussian = quadratic_closed_form(sigma, D, x);
  const double alphaL = r.alpha_qD * L;

  ChainRecorder rec(r);

  const auto rio = rio36_check(q, x);
  rec.add(1, "psi_q(x)/x <= e^x min{1/q,1/5}", rio.lhs, rio.rhs);
  rec.add(1, "(D^2 l2(x/L) + x) L/x <= alpha L", (D2 * p.ell2(x / L) + x) * L / x, alphaL);
  rec.add(1, "T[D^2 l2](x) <= alpha L", T2, alphaL);

  rec.add(2, "T[D^2 l0](x) = D sigma sqrt(2x)", T0, gaussian, Relation::approx_equal);

  const double ell1_at = p.ell1(q / e);
  const double sigma_pow = std::pow(sigma, -2.0 / (q - 2.0));
  if (!high) {
    rec.add(3, "l1 vanishes", p.ell1(1.0), 0.0, Relation::exact_equal);
    rec.add(3, "T[D^2 (l0+l1+l2)](x) <= T[D^2 l0](x) + T[D^2 l2](x)", Tfull, T0 + T2);
    rec.add(3, "T[D^2 l0](x) + T[D^2 l2](x) <= D sigma sqrt(2x) + alpha L", T0 + T2, gaussian + alphaL);
    for (int step : {4, 5, 6}) rec.skip(step, "only for q > 3");
  } else {
    rec.skip(3, "only for q <= 3");
    rec.add(4, "x/L <= q/e", x / L, q / e);
    rec.add(4, "T[D^2 (l1+l2)](x) <= alpha L + D^2 x e/3 l1(q/e)", T12, alphaL + D2 * x * e / 3.0 * ell1_at);

    const double c = sigma_pow / 3.0;
    const double pole = (1.0 - 1e-9) / c;
    auto geometric = [&](double t) { return sigma * sigma * t * t / (2.0 * (1.0 - c * t)); };
    double worst_ratio = 0.0;
    for (int i = 1; i <= 200; ++i) {
      const double t = pole * i / 200.0;
      worst_ratio = std::max(worst_ratio, (p.ell0(t) + p.ell1(t)) / geometric(t));
    }
    rec.add(5, "l0 + l1 <= geometric series bound on (0, pole)", worst_ratio, 1.0);
    const double geometric_inf = T([&](double t) { return D2 * geometric(t); }, pole);
    const double bercu = bercu_infimum(c, D2 * sigma * sigma, x);
    rec.add(5, "T[D^2 (l0+l1)](x) <= T[D^2 geometric](x)", T01, geometric_inf);
    rec.add(5, "T[D^2 geometric](x) = c x + sqrt(2 x D^2 sigma^2)", geometric_inf, bercu,
            Relation::approx_equal);
    rec.add(5, "T[D^2 (l0+l1)](x) <= sigma^{-2/(q-2)} x/3 + D sigma sqrt(2x)", T01, bercu);

    rec.add(6, "min{D^2 e l1(q/e), sigma^{-2/(q-2)}} <= D^2 e", std::min(D2 * e * ell1_at, sigma_pow), D2 * e);
    const double split_min = std::min(T0 + T12, T01 + T2);
    rec.add(6, "T[D^2 (l0+l1+l2)](x) <= min of the two splits", Tfull, split_min);
    const double display_min =
        std::min(gaussian + alphaL + D2 * x * e / 3.0 * ell1_at, sigma_pow * x / 3.0 + gaussian + alphaL);
    rec.add(6, "min of the two splits <= closed-form minimum", split_min, display_min);
    rec.add(6, "closed-form minimum <= D sigma sqrt(2x) + alpha L + D^2 e x/3", display_min,
            gaussian + alphaL + D2 * e * x / 3.0);
  }

  const double q_inf_bound = gaussian + alphaL + (high ? D2 * e * x / 3.0 : 0.0);
  rec.add(7, "T[D^2 (l0+l1+l2)](x) <= D sigma sqrt(2x) + alpha L + 1{q>3} D^2 e x/3", Tfull, q_inf_bound);
  const double approx = truncation_error_exact(q, u);
  rec.add(7, "1/(u q L^{q-1}) = L/(2q)", 1.0 / (u * q * std::pow(L, q - 1.0)), approx, Relation::approx_equal);
  rec.add(7, "L/(2q) <= u^{-1/q} 2^{1/q-1}", approx, truncation_error_bound(q, u));
  if (high) {
    const auto lp = log_poly_check(2.0 / u, q);
    rec.add(7, "log(2/u) <= (q/e) (2/u)^{1/q}", lp.lhs, lp.rhs);
  }
  r.numeric_quantile_bound = approx + Tfull;
  rec.add(7, "L/(2q) + T[D^2 (l0+l1+l2)](x) <= D sigma sqrt(2x) + final coefficient L", r.numeric_quantile_bound,
          gaussian + r.final_coefficient * L);
  const double c_qD = constant_c(q, D);
  r.displayed_bound = gaussian + c_qD * L;
  rec.add(7, "final coefficient equals c_{q,D}", r.final_coefficient, c_qD, Relation::exact_equal);
  return r;
}

}  // namespace fuknagaev
