#include <cmath>

#include "doctest.h"
#include "isacbeam/rng.hpp"

using namespace isacbeam;

TEST_CASE("equal seeds give identical sequences") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds diverge") {
  Rng a(1), b(2);
  int equal = 0;
  for (int i = 0; i < 100; ++i)
    if (a.next_u64() == b.next_u64()) ++equal;
  CHECK(equal == 0);
}

TEST_CASE("uniform stays in [0,1) and uniform_pos in (0,1]") {
  Rng rng(7);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double p = rng.uniform_pos();
    CHECK(p > 0.0);
    CHECK(p <= 1.0);
  }
}

TEST_CASE("normal moments") {
  Rng rng(99);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sum2 += x * x;
  }
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("cnormal has unit second moment") {
  Rng rng(4);
  const int n = 100000;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) sum2 += std::norm(rng.cnormal());
  CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("forked streams are deterministic and independent of parent use") {
  Rng a(5);
  (void)a.next_u64();
  (void)a.normal();
  Rng fork1 = a.fork(3);
  Rng fork2 = Rng(5).fork(3);
  for (int i = 0; i < 100; ++i) CHECK(fork1.next_u64() == fork2.next_u64());

  Rng other = Rng(5).fork(4);
  int equal = 0;
  Rng fork3 = Rng(5).fork(3);
  for (int i = 0; i < 100; ++i)
    if (other.next_u64() == fork3.next_u64()) ++equal;
  CHECK(equal == 0);
}
