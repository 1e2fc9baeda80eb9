#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace dagcover {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3"). Pure: the same (counter, key) always yields the
/// same four words.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Mixes a seed and stream coordinates into a 64-bit stream id.
std::uint64_t substream(std::uint64_t tag, std::uint64_t a = 0, std::uint64_t b = 0);

/// Counter-based generator. A stream is named by (seed, stream id); draw i of
/// a stream is a pure function of (seed, stream id, i), so independent
/// streams can be consumed from any thread in any order.
class Philox {
 public:
  using result_type = std::uint64_t;

  Philox(std::uint64_t seed, std::uint64_t stream) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Draw number `index` of this stream without touching the cursor.
  result_type at(std::uint64_t index) const noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept { return to_unit(operator()()); }
  /// Unbiased integer in [0, bound) by rejection; bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept;

  static double to_unit(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }

 private:
  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t cursor_ = 0;
};

/// Fisher-Yates with Philox::below, so shuffles are identical across
/// standard libraries.
template <typename T>
void shuffle(std::span<T> items, Philox& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace dagcover
