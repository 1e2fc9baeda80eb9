#include "dagcover/rng.hpp"

namespace dagcover {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t substream(std::uint64_t tag, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(tag) ^ a) ^ b);
}

Philox::Philox(std::uint64_t seed, std::uint64_t stream) noexcept
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      stream_(stream) {}

Philox::result_type Philox::at(std::uint64_t index) const noexcept {
  // One block yields two 64-bit draws.
  std::uint64_t block = index >> 1;
  auto out = philox4x32({static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32),
                         static_cast<std::uint32_t>(stream_),
                         static_cast<std::uint32_t>(stream_ >> 32)},
                        key_);
  return (index & 1) ? (std::uint64_t{out[3]} << 32 | out[2])
                     : (std::uint64_t{out[1]} << 32 | out[0]);
}

Philox::result_type Philox::operator()() noexcept { return at(cursor_++); }

std::uint64_t Philox::below(std::uint64_t bound) noexcept {
  // Reject the top partial bucket.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do {
    x = operator()();
  } while (x >= limit);
  return x % bound;
}

}  // namespace dagcover
