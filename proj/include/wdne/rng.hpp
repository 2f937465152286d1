#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace wdne::rng {

// mt19937_64 is bit-portable; the std distributions are not, so all draws
// go through the helpers below.

using Engine = std::mt19937_64;

/// splitmix64 finalizer; mixes a 64-bit value into a well-scrambled one.
std::uint64_t scramble(std::uint64_t x);

/// Deterministic seed derivation, e.g. per committee member or per round.
std::uint64_t mix(std::uint64_t a, std::uint64_t b);

/// Uniform double in [0, 1).
double uniform_unit(Engine& g);

/// Uniform double in [lo, hi).
double uniform_range(Engine& g, double lo, double hi);

/// Unbiased uniform integer in [0, n). n must be > 0.
std::uint64_t uniform_below(Engine& g, std::uint64_t n);

/// Standard normal via Box-Muller.
double normal(Engine& g);

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::vector<T>& v, Engine& g) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(g, i));
    std::swap(v[i - 1], v[j]);
  }
}

/// Draws `count` elements from `pool` uniformly without replacement.
template <typename T>
std::vector<T> sample_without_replacement(const std::vector<T>& pool,
                                          std::size_t count, Engine& g) {
  std::vector<T> scratch = pool;
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count && !scratch.empty(); ++i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(g, scratch.size()));
    out.push_back(scratch[j]);
    scratch[j] = scratch.back();
    scratch.pop_back();
  }
  return out;
}

} // namespace wdne::rng
