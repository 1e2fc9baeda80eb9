#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "dagcover/rng.hpp"

using namespace dagcover;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  using W = std::array<std::uint32_t, 4>;
  CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == W{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        W{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        W{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("draws are a pure function of seed, stream and index") {
  Philox a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (std::uint64_t i = 0; i < 10; ++i) {
    std::uint64_t x = a();
    CHECK(x == b.at(i));
    CHECK(x != c.at(i));
    CHECK(x != d.at(i));
  }
  CHECK(b() == Philox(42, 7).at(0));
}

TEST_CASE("substreams separate their coordinates") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a)
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(substream(1, a, b));
  CHECK(seen.size() == 400);
  CHECK(substream(1, 2, 3) != substream(1, 3, 2));
}

TEST_CASE("below is in range and roughly uniform") {
  Philox rng(9, 0);
  std::array<int, 6> counts{};
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    auto v = rng.below(6);
    REQUIRE(v < 6);
    ++counts[v];
  }
  // Each count is Binomial(60000, 1/6): sigma ~ 91.
  for (int c : counts) CHECK(std::abs(c - draws / 6) < 5 * 92);
  CHECK(rng.below(1) == 0);
}

TEST_CASE("unit doubles lie in [0, 1)") {
  CHECK(Philox::to_unit(0) == 0.0);
  CHECK(Philox::to_unit(~std::uint64_t{0}) < 1.0);
  Philox rng(1, 1);
  double sum = 0;
  for (int i = 0; i < 10000; ++i) sum += rng.uniform();
  CHECK(sum / 10000 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("shuffle is a seeded permutation") {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  Philox r1(3, 3), r2(3, 3);
  shuffle(std::span<int>(a), r1);
  shuffle(std::span<int>(b), r2);
  CHECK(a == b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> expected(50);
  std::iota(expected.begin(), expected.end(), 0);
  CHECK(sorted == expected);
  CHECK(a != expected);
}
