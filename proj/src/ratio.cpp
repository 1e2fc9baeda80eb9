#include "dagcover/ratio.hpp"

#include <charconv>
#include <numeric>

#include "dagcover/error.hpp"

namespace dagcover {

Ratio::Ratio(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) fail(ErrorKind::invalid_input, "ratio with zero denominator");
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Ratio::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    fail(ErrorKind::invalid_input, "not a rational number: '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Ratio Ratio::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos)
    return Ratio(parse_int(text.substr(0, slash), text), parse_int(text.substr(slash + 1), text));
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 15) fail(ErrorKind::invalid_input, "too many decimals in '" + std::string(text) + "'");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string_view int_part = text.substr(0, dot);
    bool negative = !int_part.empty() && int_part.front() == '-';
    std::int64_t whole = int_part.empty() || int_part == "-" ? 0 : parse_int(int_part, text);
    std::int64_t fraction = frac.empty() ? 0 : parse_int(frac, text);
    if (fraction < 0) fail(ErrorKind::invalid_input, "not a rational number: '" + std::string(text) + "'");
    std::int64_t magnitude = (whole < 0 ? -whole : whole) * scale + fraction;
    return Ratio(negative ? -magnitude : magnitude, scale);
  }
  return Ratio(parse_int(text, text));
}

}  // namespace dagcover
