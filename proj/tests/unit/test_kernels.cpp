#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "fuknagaev/error.hpp"
#include "fuknagaev/kernels.hpp"

using namespace fuknagaev;
using kernels::Isa;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = normal(engine) * std::exp(normal(engine));
  return v;
}

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

/// Plain reference: running sums per lane, max over steps of sum_c |M|^p.
std::vector<double> reference_batch(const std::vector<double>& data, std::size_t steps, std::size_t dim,
                                    std::size_t lanes, int p) {
  std::vector<double> out(lanes, 0.0);
  for (std::size_t l = 0; l < lanes; ++l) {
    std::vector<double> m(dim, 0.0);
    for (std::size_t s = 0; s < steps; ++s) {
      double total = 0.0;
      for (std::size_t c = 0; c < dim; ++c) {
        m[c] += data[(s * dim + c) * lanes + l];
        total += std::pow(std::fabs(m[c]), p);
      }
      out[l] = std::max(out[l], total);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("scalar kernels match plain loops") {
  const auto& t = kernels::table_for(Isa::scalar);
  const std::vector<double> x = {1.0, -2.0, 3.0, -4.0, 5.0, 0.5, -0.25};
  CHECK(t.sum_squares(x) == doctest::Approx(1 + 4 + 9 + 16 + 25 + 0.25 + 0.0625));
  CHECK(t.sum_abs_pow_int(x, 3) == doctest::Approx(1 + 8 + 27 + 64 + 125 + 0.125 + 0.015625));
  CHECK(t.count_greater(x, 0.75) == 3);
  CHECK(t.count_greater(x, 5.0) == 0);
  CHECK(t.sum_squares(std::span<const double>{}) == 0.0);
}

TEST_CASE("non-integer exponents fall back to pow") {
  const std::vector<double> x = {2.0, -3.0};
  CHECK(kernels::integer_exponent(2.5) == 0);
  CHECK(kernels::integer_exponent(4.0) == 4);
  CHECK(kernels::integer_exponent(65.0) == 0);
  CHECK(kernels::sum_abs_pow(x, 2.5) == doctest::Approx(std::pow(2.0, 2.5) + std::pow(3.0, 2.5)));
}

TEST_CASE("batch kernel matches the reference walk") {
  const std::size_t steps = 13, dim = 3, lanes = 11;
  const auto data = random_vector(steps * dim * lanes, 5);
  for (int p : {2, 3, 4}) {
    std::vector<double> out(lanes);
    kernels::table_for(Isa::scalar).batch_max_power_sum({data, steps, dim, lanes}, p, out);
    const auto ref = reference_batch(data, steps, dim, lanes, p);
    for (std::size_t l = 0; l < lanes; ++l) CHECK(out[l] == doctest::Approx(ref[l]).epsilon(1e-12));
  }
}

TEST_CASE("avx2 kernels are bit-identical to scalar") {
  if (!kernels::isa_available(Isa::avx2)) {
    MESSAGE("avx2 unavailable; equivalence not exercised");
    return;
  }
  const auto& s = kernels::table_for(Isa::scalar);
  const auto& v = kernels::table_for(Isa::avx2);
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 1000u, 1023u}) {
    const auto x = random_vector(n, static_cast<unsigned>(n) + 11);
    CHECK(same_bits(s.sum_squares(x), v.sum_squares(x)));
    for (int p = 1; p <= 8; ++p) CHECK(same_bits(s.sum_abs_pow_int(x, p), v.sum_abs_pow_int(x, p)));
    for (double thr : {-1.0, 0.0, 0.5, 2.0}) CHECK(s.count_greater(x, thr) == v.count_greater(x, thr));
  }
  for (std::size_t lanes : {1u, 3u, 4u, 5u, 8u, 64u}) {
    for (std::size_t dim : {1u, 2u, 5u}) {
      const std::size_t steps = 20;
      const auto data = random_vector(steps * dim * lanes, static_cast<unsigned>(lanes * 31 + dim));
      for (int p : {2, 3, 4, 8}) {
        std::vector<double> a(lanes), b(lanes);
        s.batch_max_power_sum({data, steps, dim, lanes}, p, a);
        v.batch_max_power_sum({data, steps, dim, lanes}, p, b);
        for (std::size_t l = 0; l < lanes; ++l) CHECK(same_bits(a[l], b[l]));
      }
    }
  }
}

TEST_CASE("count_greater treats NaN as not greater") {
  const std::vector<double> x = {std::nan(""), 1.0, 2.0, std::nan(""), 3.0};
  for (Isa isa : {Isa::scalar, Isa::avx2}) {
    if (!kernels::isa_available(isa)) continue;
    CHECK(kernels::table_for(isa).count_greater(x, 1.5) == 2);
  }
}

TEST_CASE("dispatch honours the scalar override") {
  const char* forced = std::getenv("FUKNAGAEV_ISA");
  if (forced != nullptr && std::string(forced) == "scalar") {
    CHECK(kernels::active_isa() == Isa::scalar);
  } else if (kernels::isa_available(Isa::avx2)) {
    CHECK(kernels::active_isa() == Isa::avx2);
  }
  const Isa before = kernels::active_isa();
  kernels::set_active_isa(Isa::scalar);
  CHECK(kernels::active_isa() == Isa::scalar);
  kernels::set_active_isa(before);
  if (!kernels::isa_available(Isa::avx2)) CHECK_THROWS_AS(kernels::set_active_isa(Isa::avx2), Error);
  CHECK(kernels::to_string(Isa::avx2) == "avx2");
}
