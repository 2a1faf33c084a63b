#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace nfp {

// std::mt19937_64 has a fully specified output sequence; the std:: distributions do not.
// All variates below are derived from raw engine output so that a seed reproduces the
// same layouts on every standard library.
inline constexpr std::string_view kRngAlgorithmId = "mt19937_64/u53-uniform/poisson-inversion/splitmix64-derive";

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent sub-seed for a named stream (and retry attempt) of a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t attempt = 0) noexcept {
  return splitmix64(splitmix64(master ^ splitmix64(stream)) + attempt);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Unbiased integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Poisson variate by sequential-search inversion. Large means are split into chunks
  /// so exp(-mean) never underflows.
  std::uint64_t poisson(double mean) {
    constexpr double kChunk = 500.0;
    std::uint64_t total = 0;
    while (mean > kChunk) {
      total += poisson_small(kChunk);
      mean -= kChunk;
    }
    return total + poisson_small(mean);
  }

 private:
  std::uint64_t poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double u = uniform01();
    double p = std::exp(-mean);
    double cdf = p;
    std::uint64_t k = 0;
    while (u >= cdf) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
      // Tail exhausted in floating point.
      if (p < 1e-300 && static_cast<double>(k) > mean) break;
    }
    return k;
  }

  std::mt19937_64 engine_;
};

}  // namespace nfp
