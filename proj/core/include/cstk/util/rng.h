// core/include/cstk/util/rng.h

// Copyright 2026  CSTK Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef CSTK_UTIL_RNG_H_
#define CSTK_UTIL_RNG_H_

#include <cmath>
#include <cstdint>
#include <string_view>

namespace cstk {

// All toolkit randomness goes through this generator (xoshiro256++ seeded
// via splitmix64).  Distribution sampling is implemented here rather than
// with <random> so that sequences are identical across standard libraries;
// byte-identical reruns are part of the pipeline contract.
class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t x = seed;
    for (int i = 0; i < 4; ++i) s_[i] = SplitMix64(&x);
  }

  uint64_t NextU64() {
    const uint64_t result = Rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = Rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double Uniform() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n).
  uint64_t UniformInt(uint64_t n) {
    return static_cast<uint64_t>(Uniform() * static_cast<double>(n)) % n;
  }

  bool Bernoulli(double p) { return Uniform() < p; }

  // Standard normal via Box-Muller (no cached spare, so the draw count per
  // call is fixed and stream splitting stays reproducible).
  double Gaussian() {
    double u1 = Uniform();
    while (u1 <= 0.0) u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  double Exponential(double rate) {
    double u = Uniform();
    while (u <= 0.0) u = Uniform();
    return -std::log(u) / rate;
  }

  static uint64_t SplitMix64(uint64_t* state) {
    uint64_t z = (*state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t s_[4];
};

// Stable stream derivation: mixes a base seed with string/integer context
// (e.g. recording id, stage name, segment index) so that per-item generators
// are independent of scheduling order.
class SeedDeriver {
 public:
  explicit SeedDeriver(uint64_t seed) : h_(seed ^ 0x632be59bd9b4e019ULL) {
    Mix(0x100000001b3ULL);
  }

  SeedDeriver& Add(std::string_view s) {
    for (unsigned char c : s) {
      h_ ^= c;
      Mix(0x100000001b3ULL);
    }
    Mix(0x9e3779b97f4a7c15ULL);
    return *this;
  }

  SeedDeriver& Add(uint64_t v) {
    h_ ^= v;
    Mix(0x9e3779b97f4a7c15ULL);
    return *this;
  }

  uint64_t Get() const {
    uint64_t x = h_;
    return Rng::SplitMix64(&x);
  }

 private:
  void Mix(uint64_t m) {
    h_ *= m;
    uint64_t x = h_;
    h_ = Rng::SplitMix64(&x);
  }
  uint64_t h_;
};

inline uint64_t DeriveSeed(uint64_t seed, std::string_view a, uint64_t b = 0,
                           uint64_t c = 0) {
  return SeedDeriver(seed).Add(a).Add(b).Add(c).Get();
}

}  // namespace cstk

#endif  // CSTK_UTIL_RNG_H_
