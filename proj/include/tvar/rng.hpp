#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace tvar {

// Seeded Gaussian/uniform source.  mt19937_64 output is fully specified
// by the standard and the Box-Muller transform below uses only libm, so
// a given seed reproduces the same stream on every build.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on (0, 1]; never returns 0 so it is safe under log().
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (one variate per pair of uniforms;
  // nothing cached, so interleaved consumers stay reproducible).
  double normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; decorrelates consecutive/structured inputs.
inline std::uint64_t mix_u64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic per-trial seed from (master seed, scenario, hypothesis,
// trial index).  Chained mixing keeps distinct field combinations from
// colliding, so trials are independent and order-free.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t scenario,
                                 std::uint64_t hypothesis,
                                 std::uint64_t trial) {
  std::uint64_t h = mix_u64(master);
  h = mix_u64(h ^ scenario);
  h = mix_u64(h ^ hypothesis);
  h = mix_u64(h ^ trial);
  return h;
}

}  // namespace tvar
