#include <doctest.h>

#include <cmath>
#include <vector>

#include "skewsim/rng.hpp"

using namespace skewsim;

TEST_CASE("philox known-answer vectors") {
  const auto z = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(z[0] == 0x6627e8d5u);
  CHECK(z[1] == 0xe169c58du);
  CHECK(z[2] == 0xbc57ac4cu);
  CHECK(z[3] == 0x9b00dbd8u);
  const auto f = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            {0xffffffffu, 0xffffffffu});
  CHECK(f[0] == 0x408f276du);
  CHECK(f[1] == 0x41c83b0eu);
  CHECK(f[2] == 0xa20bc7c6u);
  CHECK(f[3] == 0x6d5451fdu);
  const auto p = philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            {0xa4093822u, 0x299f31d0u});
  CHECK(p[0] == 0xd16cfe09u);
  CHECK(p[1] == 0x94fdccebu);
  CHECK(p[2] == 0x5001e420u);
  CHECK(p[3] == 0x24126ea1u);
}

TEST_CASE("equal seed and stream give identical sequences") {
  RngStream a(42, 7);
  RngStream b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams differ") {
  RngStream a(42, 0);
  RngStream b(42, 1);
  int equal = 0;
  for (int i = 0; i < 1000; ++i) equal += a.next_u64() == b.next_u64();
  CHECK(equal == 0);
}

TEST_CASE("uniform lies in the open unit interval") {
  RngStream r(1, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("equidistribution smoke test across streams") {
  // 10 cells, 10 streams x 10^4 draws; chi-square with 9 dof below 30 (p ~ 4e-4)
  for (std::uint64_t s = 0; s < 10; ++s) {
    RngStream r(2024, s);
    std::vector<int> cells(10, 0);
    const int n = 10000;
    for (int i = 0; i < n; ++i) ++cells[static_cast<int>(r.uniform() * 10.0)];
    double chi = 0.0;
    for (int c : cells) chi += (c - n / 10.0) * (c - n / 10.0) / (n / 10.0);
    CAPTURE(s);
    CHECK(chi < 30.0);
  }
}

TEST_CASE("normal draws have unit variance") {
  RngStream r(5, 3);
  const int n = 200000;
  double s = 0.0;
  double s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = r.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::fabs(s / n) < 0.01);
  CHECK(std::fabs(s2 / n - 1.0) < 0.015);
}

TEST_CASE("exponential mean") {
  RngStream r(9, 0);
  const int n = 200000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += r.exponential();
  CHECK(std::fabs(s / n - 1.0) < 0.01);
}
