#ifndef DINV_RANDOM_H_
#define DINV_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace dinv {

// splitmix64. Small, seedable, and identical on every platform, which the
// on-disk databases rely on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [lo, hi], rejection sampled.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return lo + static_cast<std::int64_t>(r % span);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Box-Muller; one draw per call, the partner value is discarded.
  double normal() {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

 private:
  std::uint64_t state_;
};

// Mixes a seed with a list of indices into an independent subseed.
inline std::uint64_t subseed(std::uint64_t seed, std::initializer_list<std::uint64_t> keys) {
  Rng r(seed);
  std::uint64_t h = r.next();
  for (auto k : keys) {
    Rng m(h ^ (k * 0xD1B54A32D192ED03ULL));
    h = m.next();
  }
  return h;
}

}  // namespace dinv

#endif  // DINV_RANDOM_H_
