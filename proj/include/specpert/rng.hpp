#pragma once

#include <cstdint>

#include "specpert/matrix.hpp"

namespace specpert {

// Seed derivation and sampling are pinned bit-exactly (see README,
// "Reproducibility") so that ensembles can be regenerated from
// (masterSeed, realization index) alone.

/// splitmix64 finalizer.
inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

/// Stream seed for realization `index`: the (index+1)-th splitmix64 output
/// with the master seed as initial state.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + (index + 1) * 0x9E3779B97F4A7C15ull);
}

/// xoshiro256** seeded through splitmix64.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform in [0,1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// One N(0,1) variate; consumes exactly two uniforms (Box-Muller, cosine leg).
  double gaussian();

  /// N_C(0,1): independent real/imag parts of variance 1/2, so E|z|^2 = 1.
  /// Consumes exactly two uniforms (both Box-Muller legs).
  cplx complex_gaussian();

  /// e^{2*pi*i*u}; consumes one uniform.
  cplx unit_phase();

 private:
  std::uint64_t s_[4];
};

}  // namespace specpert
