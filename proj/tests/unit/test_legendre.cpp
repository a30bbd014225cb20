#include <cmath>
#include <random>

#include <boost/math/tools/minima.hpp>

#include "doctest.h"
#include "fuknagaev/bounds.hpp"
#include "fuknagaev/error.hpp"
#include "fuknagaev/legendre.hpp"

using namespace fuknagaev;

TEST_CASE("psi_q values") {
  // 40-digit references: e - 2 and e^2 - 1 - 2 - 2 - 4/3.
  CHECK(psi_tail(2.0, 1.0) == doctest::Approx(0.71828182845904524).epsilon(1e-14));
  CHECK(psi_tail(4.0, 2.0) == doctest::Approx(1.0557227655973169).epsilon(1e-14));
  CHECK(psi_tail(3.5, 0.0) == 0.0);
  // Non-integer q starts at ceil(q): psi_{2.5} = psi_3.
  CHECK(psi_tail(2.5, 1.7) == psi_tail(3.0, 1.7));
  // Both evaluation branches meet continuously at t = ceil(q).
  CHECK(psi_tail(4.0, std::nextafter(4.0, 0.0)) == doctest::Approx(psi_tail(4.0, 4.0)).epsilon(1e-13));
  // Leading behaviour t^k/k! for small t.
  CHECK(psi_tail(5.0, 1e-3) == doctest::Approx(1e-15 / 120.0).epsilon(1e-3));
}

TEST_CASE("cgf pieces") {
  const auto p3 = cgf_pieces(3.0, 0.7, 2.0);
  for (double t : {0.1, 1.0, 5.0}) CHECK(p3.ell1(t) == 0.0);
  const auto p4 = cgf_pieces(4.0, 1.0, 2.0);
  CHECK(p4.ell1(1.3) == doctest::Approx(1.3 * 1.3 * 1.3 / 6.0));
  CHECK(p4.ell0(2.0) == 2.0);
  CHECK(p4.ell2(0.5) == doctest::Approx(std::pow(2.0, -4.0) * psi_tail(4.0, 1.0)));
  CHECK_THROWS_AS(cgf_pieces(2.0, 1.0, 1.0), Error);
}

TEST_CASE("pieces are nonnegative and nondecreasing") {
  for (double q : {2.5, 3.5, 4.0, 6.0}) {
    const auto p = cgf_pieces(q, 0.8, 1.7);
    double prev0 = 0, prev1 = 0, prev2 = 0;
    for (int i = 1; i <= 200; ++i) {
      const double t = 0.05 * i;
      CHECK(p.ell0(t) >= prev0);
      CHECK(p.ell1(t) >= prev1);
      CHECK(p.ell2(t) >= prev2);
      prev0 = p.ell0(t);
      prev1 = p.ell1(t);
      prev2 = p.ell2(t);
    }
  }
}

TEST_CASE("t^-2 l1(t) is nondecreasing") {
  for (double q : {3.5, 4.0, 6.0, 9.5}) {
    for (double sigma : {0.1, 1.0, 5.0}) {
      const auto p = cgf_pieces(q, sigma, 1.0);
      double prev = 0.0;
      for (int i = 1; i <= 300; ++i) {
        const double t = 0.02 * i;
        const double v = p.ell1(t) / (t * t);
        CHECK(v >= prev * (1.0 - 1e-15));
        prev = v;
      }
    }
  }
}

TEST_CASE("inverse legendre of quadratics") {
  const auto half_square = [](double t) { return t * t / 2.0; };
  CHECK(inverse_legendre(half_square, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(inverse_legendre(half_square, 0.0) <= 1e-11);
  CHECK(quadratic_closed_form(1.0, 1.0, 2.0) == 2.0);
  CHECK(quadratic_closed_form(0.5, 1.0, std::log(20.0)) == doctest::Approx(1.2238734153404083).epsilon(1e-15));
  CHECK(quadratic_closed_form(0.0, 1.0, 3.0) == 0.0);
  CHECK(quadratic_closed_form(1.0, 2.0, 2.0) == doctest::Approx(4.0));
  const auto p = cgf_pieces(4.0, 0.5, 1.0);
  const double x = std::log(20.0);
  const double numeric = inverse_legendre([&](double t) { return p.ell0(t); }, x);
  CHECK(std::abs(numeric - quadratic_closed_form(0.5, 1.0, x)) <= 1e-8 * quadratic_closed_form(0.5, 1.0, x));
}

TEST_CASE("inverse legendre is monotone in x and subadditive in psi") {
  const std::vector<ConvexFunction> family = {
      [](double t) { return t * t / 2.0; },
      [](double t) { return std::expm1(t) - t; },
      [](double t) { return 0.3 * t * t * t; },
      [](double t) { return psi_tail(3.5, 2.0 * t) / 16.0; },
  };
  for (std::size_t i = 0; i < family.size(); ++i) {
    double prev = -1.0;
    for (double x : {0.0, 0.1, 0.5, 1.0, 3.0, 10.0}) {
      const double v = inverse_legendre(family[i], x);
      CHECK(v >= prev);
      prev = v;
    }
    for (std::size_t j = 0; j < family.size(); ++j) {
      const auto sum = [&](double t) { return family[i](t) + family[j](t); };
      for (double x : {0.2, 2.0, 7.0}) {
        CHECK(inverse_legendre(sum, x) <=
              (inverse_legendre(family[i], x) + inverse_legendre(family[j], x)) * (1 + 1e-10));
      }
    }
  }
}

TEST_CASE("non-finite psi inside the bracket is a domain error") {
  const auto bad = [](double t) { return t > 1.0 ? std::nan("") : t * t; };
  try {
    inverse_legendre(bad, 1.0);
    FAIL("expected domain-error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::domain_error);
  }
}

TEST_CASE("bercu infimum") {
  CHECK(bercu_infimum(1.0, 2.0, 2.0) == doctest::Approx(4.8284271247461903));
  CHECK(bercu_infimum(0.5, 1.0, 8.0) == 8.0);
  CHECK(bercu_infimum(2.0, 0.0, 3.0) == 6.0);
  CHECK(bercu_numeric(2.0, 0.0, 3.0) == doctest::Approx(6.0).epsilon(1e-10));
  for (double c : {0.01, 0.3, 7.0}) {
    for (double v : {0.0, 0.5, 40.0}) {
      for (double x : {0.01, 1.0, 90.0}) {
        const double closed = bercu_infimum(c, v, x);
        const auto f = [&](double t) { return bercu_objective(c, v, x, t); };
        const auto brent = boost::math::tools::brent_find_minima(f, 1e-12 / c, (1.0 - 1e-15) / c, 52);
        CHECK(std::abs(brent.second - closed) <= 1e-8 * closed);
        CHECK(std::abs(bercu_numeric(c, v, x) - closed) <= 1e-8 * closed);
      }
    }
  }
}

TEST_CASE("log-poly inequality") {
  for (double q : {0.5, 2.0, 4.0, 17.0}) {
    const auto eq = log_poly_check(std::exp(q), q);
    CHECK(eq.passed);
    CHECK(std::abs(eq.lhs - eq.rhs) <= 1e-12 * eq.rhs);
  }
  const auto one = log_poly_check(1.0, 3.0);
  CHECK(one.lhs == 0.0);
  CHECK(one.passed);
  std::mt19937_64 engine(4);
  std::uniform_real_distribution<double> lx(std::log(1e-6), std::log(1e6)), uq(0.1, 50.0);
  for (int i = 0; i < 10000; ++i) CHECK(log_poly_check(std::exp(lx(engine)), uq(engine)).passed);
}

TEST_CASE("rio 3.6 inequality") {
  const auto r = rio36_check(3.0, 1.0);
  CHECK(r.lhs == doctest::Approx(0.21828182845904524).epsilon(1e-14));
  CHECK(r.rhs == doctest::Approx(0.54365636569180905).epsilon(1e-14));
  CHECK(r.passed);
  CHECK(rio36_check(4.0, 1e-8).lhs < 1e-20);
  for (double q : {2.5, 3.0, 4.0, 6.0, 10.0}) {
    for (int i = 0; i <= 100; ++i) {
      const double x = 1e-3 * std::pow(5e4, i / 100.0);
      CAPTURE(q);
      CAPTURE(x);
      CHECK(rio36_check(q, x).passed);
    }
  }
}

TEST_CASE("truncation error bound") {
  CHECK(truncation_error_bound(4.0, 0.1) == doctest::Approx(1.0573712634405641).epsilon(1e-15));
  CHECK(truncation_error_bound(4.0, 1.0 - 1e-12) == doctest::Approx(0.59460355750136053).epsilon(1e-11));
  CHECK(truncation_bound_monotone_in_q(0.1, {2.5, 3.0, 4.0, 6.0, 10.0}));
  // The exact term carries an extra 1/q and sits below the displayed bound.
  CHECK(truncation_error_exact(4.0, 0.1) == doctest::Approx(1.0573712634405641 / 4.0));
  CHECK_THROWS_AS(truncation_error_bound(4.0, 1.0), Error);
}

TEST_CASE("proof chain example") {
  const auto r = proof_chain(4.0, 1.0, 0.5, 0.1);
  CHECK(r.x_hat == doctest::Approx(2.9957322735539910).epsilon(1e-15));
  CHECK(r.trunc_L == doctest::Approx(2.1147425268811282).epsilon(1e-15));
  CHECK(r.alpha_qD == doctest::Approx(1.2));
  CHECK(r.passed());
  CHECK(r.final_coefficient == constant_c(4.0, 1.0));
  bool saw_step2 = false;
  for (const auto& s : r.steps) {
    if (s.step == 2) {
      saw_step2 = true;
      CHECK(s.lhs == doctest::Approx(1.2238734153404083).epsilon(1e-8));
    }
    if (s.applicable) CHECK(s.passed);
  }
  CHECK(saw_step2);
}

TEST_CASE("proof chain low-q branch skips the l1 steps") {
  const auto r = proof_chain(2.5, 1.0, 1.0, 0.1);
  CHECK(r.passed());
  for (const auto& s : r.steps) {
    if (s.step >= 4 && s.step <= 6) CHECK_FALSE(s.applicable);
    if (s.step == 3) CHECK(s.applicable);
  }
  CHECK(proof_chain(3.0, 1.0, 1.0, 0.1).final_coefficient == 41.0 / 30.0);
}

TEST_CASE("proof chain reports the D^2 discrepancy of the constant") {
  const auto r = proof_chain(4.0, 2.0, 0.5, 0.1);
  REQUIRE(r.failing_step.has_value());
  CHECK(*r.failing_step == 7);
  for (const auto& s : r.steps) {
    if (s.claim == "final coefficient equals c_{q,D}") {
      CHECK_FALSE(s.passed);
    } else if (s.applicable) {
      CHECK(s.passed);
    }
  }
  CHECK(r.final_coefficient - constant_c(4.0, 2.0) == doctest::Approx(3.0 * 0.2));
}

TEST_CASE("proof chain input validation") {
  CHECK_THROWS_AS(proof_chain(2.0, 1.0, 1.0, 0.1), Error);
  CHECK_THROWS_AS(proof_chain(4.0, 0.5, 1.0, 0.1), Error);
  CHECK_THROWS_AS(proof_chain(4.0, 1.0, 1.0, 1.5), Error);
}
