#include <cmath>

#include "doctest.h"
#include "fuknagaev/error.hpp"
#include "fuknagaev/stochastic.hpp"

using namespace fuknagaev;

TEST_CASE("exact rademacher case") {
  const auto r = pinelis_exact_rademacher(2, 1.0, 1.0);
  CHECK(r.exact);
  // 0.5 + 0.5 cosh 2 and (e - 1)^2 from a 40-digit evaluation.
  CHECK(r.mean_cosh == doctest::Approx(2.3810978455418157).epsilon(1e-15));
  CHECK(r.product_bound == doctest::Approx(2.9524924420125598).epsilon(1e-15));
  CHECK(r.passed);
  for (double g : r.mean_g) CHECK(g <= 1.0 + 1e-15);
}

TEST_CASE("small t drives both sides to one") {
  const auto r = pinelis_exact_rademacher(5, 1e-6, 1.0);
  CHECK(r.mean_cosh == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(r.product_bound == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("empty path") {
  const auto r = pinelis_exact_rademacher(0, 1.0, 1.0);
  CHECK(r.mean_cosh == 1.0);
  CHECK(r.product_bound == 1.0);
  CHECK(r.passed);
}

TEST_CASE("e-term closed forms") {
  const auto rad = make_distribution(RademacherScale{1.0}, make_euclidean(1));
  CHECK(pinelis_e_term(rad, std::nullopt, 1.0) == doctest::Approx(std::exp(1.0) - 2.0));
  // Uniform(-1,1): E[e^{t|U|} - 1 - t|U|] = (e^t - 1)/t - 1 - t/2
  const auto uni = make_distribution(UniformCube{1.0}, make_euclidean(1));
  const double t = 0.7;
  CHECK(pinelis_e_term(uni, std::nullopt, t) == doctest::Approx((std::expm1(t) / t) - 1.0 - t / 2.0).epsilon(1e-12));
  // Truncation of a bounded law at a level above its support changes nothing.
  CHECK(pinelis_e_term(uni, TruncationLevel{2.0}, t) == doctest::Approx(pinelis_e_term(uni, std::nullopt, t)));
}

TEST_CASE("unbounded laws need truncation") {
  const auto par = make_distribution(SymmetricPareto{4.5}, make_euclidean(1));
  try {
    pinelis_e_term(par, std::nullopt, 0.5);
    FAIL("expected precondition-violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::precondition_violation);
  }
  CHECK(pinelis_e_term(par, TruncationLevel{3.0}, 0.5) > 0.0);
}

TEST_CASE("monte carlo supermartingale check") {
  const auto par = make_distribution(SymmetricPareto{4.5}, make_euclidean(3));
  const auto r = pinelis_check({par, TruncationLevel{2.0}, 5}, 20000, 0.5, 17);
  CHECK(r.passed);
  CHECK(r.mean_g.size() == 6);
  CHECK(r.mean_g[0] == 1.0);
  CHECK(r.mean_cosh <= r.product_bound + 3.0 * r.cosh_se);
}

TEST_CASE("rio moment interpolation") {
  // Two-point law ||xi~|| in {0, a} with probability p per step, n steps.
  const double a = 1.2, p = 0.04, q = 4.0;
  const std::size_t n = 10;
  const double sigma = std::sqrt(n * p * a * a);
  const std::vector<NormLaw> steps(n, NormLaw{{0.0, a}, {1.0 - p, p}});
  REQUIRE(n * p * std::pow(a, q) <= 1.0);
  const auto k3 = rio_moment_check(steps, q, 3.0, sigma, a);
  CHECK(k3.passed);
  CHECK(k3.moment_sum == doctest::Approx(n * p * a * a * a));
  const auto k2 = rio_moment_check(steps, q, 2.0, sigma, a);
  CHECK(k2.passed);
  CHECK(k2.bound == doctest::Approx(sigma * sigma));
  const auto kq = rio_moment_check(steps, q, q, sigma, a);
  CHECK(kq.bound == doctest::Approx(1.0));
  const auto k6 = rio_moment_check(steps, q, 6.0, sigma, a);
  CHECK(k6.passed);
  CHECK(k6.bound == doctest::Approx(a * a));
}

TEST_CASE("rio preconditions are enforced") {
  const std::vector<NormLaw> too_big(1, NormLaw{{3.0}, {1.0}});
  CHECK_THROWS_AS(rio_moment_check(too_big, 4.0, 3.0, 3.0, 2.0), Error);
  const std::vector<NormLaw> heavy(1, NormLaw{{1.5}, {1.0}});
  CHECK_THROWS_AS(rio_moment_check(heavy, 4.0, 3.0, 2.0, 2.0), Error);
}
