#include "doctest.h"

#include <cmath>

#include "bpdd/rng.hpp"

using bpdd::rng::GaussianStream;
using bpdd::rng::philox4x32;

TEST_CASE("philox4x32-10 known-answer vectors") {
  // Published test vectors for Philox4x32 with 10 rounds.
  auto zero = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(zero[0] == 0x6627e8d5u);
  CHECK(zero[1] == 0xe169c58du);
  CHECK(zero[2] == 0xbc57ac4cu);
  CHECK(zero[3] == 0x9b00dbd8u);

  auto ones = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                         {0xffffffffu, 0xffffffffu});
  CHECK(ones[0] == 0x408f276du);
  CHECK(ones[1] == 0x41c83b0eu);
  CHECK(ones[2] == 0xa20bc7c6u);
  CHECK(ones[3] == 0x6d5451fdu);
}

TEST_CASE("streams are pure functions of (seed, stream, index)") {
  GaussianStream a(42, 7);
  GaussianStream b(42, 7);
  for (std::uint64_t i : {0ull, 1ull, 2ull, 999ull, 12345ull})
    CHECK(a.at(i) == b.at(i));

  GaussianStream c(42, 8);
  GaussianStream d(43, 7);
  CHECK(a.at(0) != c.at(0));
  CHECK(a.at(0) != d.at(0));
}

TEST_CASE("fill agrees with random access at any offset") {
  GaussianStream s(1234, 99);
  auto block = s.take(3, 17);
  for (std::size_t k = 0; k < block.size(); ++k)
    CHECK(block[k] == s.at(3 + k));
}

TEST_CASE("draws look standard normal") {
  GaussianStream s(2024, 1);
  const std::size_t n = 200000;
  auto v = s.take(0, n);
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  var /= n - 1;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  CHECK(std::abs(var - 1.0) < 0.02);
  // a crude tail check: |x|>4 should be rare but present at this size
  std::size_t tail = 0;
  for (double x : v)
    if (std::abs(x) > 4.0) ++tail;
  CHECK(tail < 40);
}
