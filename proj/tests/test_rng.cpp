#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "sgini/rng.hpp"

using namespace sgini;

TEST_CASE("streams are reproducible and seed-sensitive") {
  RngStream a(42);
  RngStream b(42);
  RngStream c(43);
  bool all_equal = true;
  bool any_diff = false;
  for (int i = 0; i < 64; ++i) {
    const std::uint64_t xa = a.next_u64();
    all_equal = all_equal && xa == b.next_u64();
    any_diff = any_diff || xa != c.next_u64();
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("derived streams do not depend on creation order") {
  RngStream first = derive_stream(7, 2);
  RngStream ignored = derive_stream(7, 1);
  RngStream second = derive_stream(7, 2);
  (void)ignored;
  for (int i = 0; i < 16; ++i) CHECK(first.next_u64() == second.next_u64());
}

TEST_CASE("uniform doubles stay in [0, 1) with a plausible mean") {
  RngStream s(2024);
  double sum = 0.0;
  for (int i = 0; i < 20000; ++i) {
    const double u = s.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / 20000.0 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("bounded indices cover the range uniformly") {
  RngStream s(99);
  int counts[7] = {0};
  for (int i = 0; i < 70000; ++i) {
    const auto k = s.next_index(7);
    REQUIRE(k < 7);
    ++counts[k];
  }
  for (int c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
}

TEST_CASE("normal draws have standard moments") {
  RngStream s(5150);
  double sum = 0.0;
  double sq = 0.0;
  const int n = 50000;
  for (int i = 0; i < n; ++i) {
    const double z = s.next_normal();
    sum += z;
    sq += z * z;
  }
  CHECK(sum / n == doctest::Approx(0.0).scale(1.0).epsilon(0.02));
  CHECK(sq / n == doctest::Approx(1.0).epsilon(0.03));
}
