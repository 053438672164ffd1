#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace hardcore {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless stream derivation: stream `index` of a root seed. Adding more
/// replicates never perturbs the seeds of earlier ones.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  return splitmix64(root + (index + 1) * 0x9e3779b97f4a7c15ULL);
}

/// Deterministic random stream. mt19937_64 is fully specified by the
/// standard, and all conversions below avoid std::*_distribution, so a seed
/// reproduces the same draws on any conforming implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0,1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform in {0,...,n-1}. Modulo bias is < n / 2^64.
  int next_below(int n) {
    return static_cast<int>(engine_() % static_cast<std::uint64_t>(n));
  }

  double next_exponential() { return -std::log1p(-next_unit()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hardcore
