#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rstparse {

// Deterministic RNG facade. Draws go through fixed formulas instead of
// std::uniform_* distributions, whose output is implementation-defined;
// fixed seeds therefore reproduce bit-exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, n).
  std::size_t index(std::size_t n) { return n ? static_cast<std::size_t>(gen_() % n) : 0; }

  // Uniform in [0, 1) with 53-bit resolution.
  double real() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * real(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = index(i);
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

inline std::uint64_t fnv1a_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace rstparse
