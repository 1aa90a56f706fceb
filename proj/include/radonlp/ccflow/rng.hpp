#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace radonlp {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of work chunk `chunk` under master seed `master`. Every parallel
/// kernel splits its stream this way, so results do not depend on the
/// number of workers.
inline std::uint64_t chunk_seed(std::uint64_t master, std::uint64_t chunk) {
  return splitmix64(splitmix64(master) + chunk);
}

/// mt19937_64 with portable draws (the std distributions are not
/// reproducible across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }
  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  /// Exp(1).
  double exponential() { return -std::log1p(-uniform()); }
  double normal() {
    double u = 1.0 - uniform();
    double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586 * v);
  }
  /// Uniform integer in [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) { return lo + gen_() % (hi - lo + 1); }
  bool coin() { return (gen_() >> 63) != 0; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace radonlp
