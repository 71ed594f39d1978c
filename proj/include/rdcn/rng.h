#ifndef RDCN_RNG_H_
#define RDCN_RNG_H_

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace rdcn {

// mt19937_64 is fully specified by the standard, the std distributions are
// not. All derived draws are computed here so seeded output is identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t Next() { return engine_(); }

  // Uniform integer in [0, n). n must be > 0.
  uint64_t Below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  // Exponential variate with the given mean.
  double Exponential(double mean) { return -mean * std::log1p(-Uniform()); }

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[Below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rdcn

#endif  // RDCN_RNG_H_
