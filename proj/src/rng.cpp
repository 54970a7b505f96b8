#include "loopym/rng.hpp"

#include <cmath>

namespace loopym {

uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ULL;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return z;
}

uint64_t derive_trial_seed(uint64_t master, uint64_t trial_index) {
  return mix64(master + 0x9E3779B97F4A7C15ULL * (trial_index + 1));
}

Rng make_rng(uint64_t seed) { return Rng(mix64(seed ^ 0xD1B54A32D192ED03ULL)); }

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t uniform_below(Rng& rng, uint64_t n) {
  return static_cast<uint64_t>((static_cast<__uint128_t>(rng()) * n) >> 64);
}

double gaussian(Rng& rng) {
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform01(rng);
  double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
}

double exponential(Rng& rng, double rate) {
  double u = 0.0;
  while (u <= 0.0) u = uniform01(rng);
  return -std::log(u) / rate;
}

}  // namespace loopym
