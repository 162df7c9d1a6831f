#pragma once

#include <cstddef>
#include <string>

namespace percolab {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double value);

/// Smallest integer >= x, ignoring floating noise of a few ulps
/// (so 0.3 / 0.03 rounds to 10, not 11).
std::size_t ceil_count(double x);

/// Largest integer <= x with the same noise allowance.
std::size_t floor_count(double x);

}  // namespace percolab
