#include <set>

#include "doctest.h"
#include "fuknagaev/random.hpp"

using namespace fuknagaev;

TEST_CASE("splitmix64 reference values") {
  // Published output sequence of the splitmix64 generator seeded with 0.
  CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64(2 * 0x9e3779b97f4a7c15ULL) == 0x06c45d188009454fULL);
}

TEST_CASE("derived streams are deterministic and distinct") {
  CHECK(derive_seed(42, 7) == derive_seed(42, 7));
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  CHECK(seen.size() == 1000);
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  Engine a = make_engine(9, 3), b = make_engine(9, 3);
  for (int i = 0; i < 10; ++i) CHECK(a() == b());
}

TEST_CASE("open uniform stays strictly inside (0, 1)") {
  Engine e = make_engine(1);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = uniform_open01(e);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}
