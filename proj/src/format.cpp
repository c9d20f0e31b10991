#include "erlab/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace erlab {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), end);
}

std::string format_optional(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string();
}

}  // namespace erlab
