#include "percolab/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace percolab {

unsigned thread_count(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("PERCOLAB_THREADS"); env != nullptr) {
    unsigned value = 0;
    const char* end = env + std::strlen(env);
    if (auto [ptr, ec] = std::from_chars(env, end, value); ec == std::errc{} && ptr == end) cap = value;
  }
  unsigned n = requested;
  if (n == 0) n = cap != 0 ? cap : std::max(1u, std::thread::hardware_concurrency());
  if (cap != 0) n = std::min(n, cap);
  return std::max(1u, n);
}

}  // namespace percolab
