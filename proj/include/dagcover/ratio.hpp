#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace dagcover {

/// Exact rational in lowest terms with a positive denominator.
class Ratio {
 public:
  constexpr Ratio() = default;
  Ratio(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / den_; }

  /// "p/q", always with the slash.
  std::string to_string() const;
  /// Accepts "p/q", "p" or a decimal such as "1.25".
  static Ratio parse(std::string_view text);

  friend bool operator==(const Ratio&, const Ratio&) = default;
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace dagcover
