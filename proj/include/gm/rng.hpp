#pragma once

#include <cstdint>
#include <random>

#include "gm/algebra.hpp"

namespace gm {

// splitmix64 step; used to derive per-sample sub-seeds from a master seed
// so serial and parallel sweeps agree.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Gaussian stream backed by mt19937_64; deterministic for a fixed seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gaussian() { return normal_(gen_); }
  double uniform(double a, double b) {
    return a + (b - a) * uni_(gen_);
  }
  std::uint64_t bits() { return gen_(); }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uni_{0.0, 1.0};
};

// Uniform samples on the named spheres via normalized Gaussian vectors.

inline Quaternion random_unit_s3(Rng& rng) {
  Quaternion q{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
  return normalized(q);
}

inline QuatPair random_unit_s7(Rng& rng) {
  QuatPair u{{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()},
             {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()}};
  return normalized(u);
}

// S^6 in Im H x H: first component purely imaginary.
inline QuatPair random_unit_s6(Rng& rng) {
  QuatPair u{{0.0, rng.gaussian(), rng.gaussian(), rng.gaussian()},
             {rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()}};
  return normalized(u);
}

// S^5 in Im H x Im H: both components purely imaginary.
inline QuatPair random_unit_s5(Rng& rng) {
  QuatPair u{{0.0, rng.gaussian(), rng.gaussian(), rng.gaussian()},
             {0.0, rng.gaussian(), rng.gaussian(), rng.gaussian()}};
  return normalized(u);
}

inline Quaternion random_unit_s3(std::uint64_t seed) {
  Rng rng(seed);
  return random_unit_s3(rng);
}

inline QuatPair random_unit_s7(std::uint64_t seed) {
  Rng rng(seed);
  return random_unit_s7(rng);
}

inline QuatPair random_unit_s6(std::uint64_t seed) {
  Rng rng(seed);
  return random_unit_s6(rng);
}

inline QuatPair random_unit_s5(std::uint64_t seed) {
  Rng rng(seed);
  return random_unit_s5(rng);
}

}  // namespace gm
