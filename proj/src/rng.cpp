#include "specpert/rng.hpp"

#include <cmath>
#include <numbers>

namespace specpert {

Rng::Rng(std::uint64_t seed) {
  // Fill state with successive splitmix64 outputs.
  std::uint64_t x = seed;
  for (auto& s : s_) {
    x += 0x9E3779B97F4A7C15ull;
    s = mix64(x);
  }
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t Rng::next_u64() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::gaussian() {
  const double u1 = 1.0 - uniform01();  // (0,1], keeps log() finite
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::complex_gaussian() {
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-std::log(u1));  // -2 log(u) scaled by 1/sqrt(2)
  const double th = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

cplx Rng::unit_phase() {
  const double th = 2.0 * std::numbers::pi * uniform01();
  return {std::cos(th), std::sin(th)};
}

}  // namespace specpert
