#include "percolab/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>

namespace percolab {

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  (void)ec;
  return std::string(buffer, end);
}

namespace {
constexpr double kRelativeNoise = 1e-12;
}

std::size_t ceil_count(double x) {
  if (!(x > 0)) return 0;
  return static_cast<std::size_t>(std::ceil(x - kRelativeNoise * std::max(1.0, x)));
}

std::size_t floor_count(double x) {
  if (!(x > 0)) return 0;
  return static_cast<std::size_t>(std::floor(x + kRelativeNoise * std::max(1.0, x)));
}

}  // namespace percolab
