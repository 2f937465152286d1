#include "wdne/rng.hpp"

#include <cmath>

namespace wdne::rng {

std::uint64_t scramble(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return scramble(scramble(a) + 0x9E3779B97F4A7C15ULL * (b + 1));
}

double uniform_unit(Engine& g) {
  // 53 random bits -> [0, 1)
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

double uniform_range(Engine& g, double lo, double hi) {
  return lo + (hi - lo) * uniform_unit(g);
}

std::uint64_t uniform_below(Engine& g, std::uint64_t n) {
  // rejection sampling over the top multiple of n
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % n;
}

double normal(Engine& g) {
  double u1 = uniform_unit(g);
  double u2 = uniform_unit(g);
  while (u1 <= 0.0) u1 = uniform_unit(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

} // namespace wdne::rng
