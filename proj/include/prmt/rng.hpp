#pragma once

#include <cmath>
#include <cstdint>

namespace prmt::models {

/// Counter-based generator: every draw is a hash of (seed, stream, counter),
/// so any sample of any stream is reproducible independent of scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) {
    base_ = mix(mix(0x9e3779b97f4a7c15ULL ^ seed) + stream);
  }

  std::uint64_t next_u64() { return mix(base_ + 0x9e3779b97f4a7c15ULL * ++ctr_); }

  double uniform() {  // (0, 1]
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  double exponential(double mean) { return -mean * std::log(uniform()); }

  double gaussian() {  // Box-Muller, one value per two uniforms
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = uniform(), v = uniform();
    double r = std::sqrt(-2.0 * std::log(u)), th = 2.0 * M_PI * v;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t base_ = 0, ctr_ = 0;
  bool have_spare_ = false;
  double spare_ = 0;
};

}  // namespace prmt::models
