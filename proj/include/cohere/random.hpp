// Copyright 2026 The cohere Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "cohere/hermitian.hpp"

namespace cohere {

/// Counter-based generator: the n-th draw of a stream is a pure function of
/// (key, n), so substreams for different state indices never share state.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(mix(key)) {}

  /// Substream for item `index` of a run seeded with `seed` (key = seed ^ index).
  static CounterRng substream(std::uint64_t seed, std::uint64_t index) { return CounterRng(seed ^ index); }

  std::uint64_t next_u64() { return mix(key_ + kGamma * ++counter_); }

  /// Uniform on (0, 1], 53-bit resolution.
  double uniform() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the second variate is cached.
  double normal();

  /// Standard complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();

  std::uint64_t counter() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

/// dim x cols matrix of independent standard complex Gaussians.
ComplexMatrix ginibre(CounterRng& rng, int rows, int cols);

/// Haar-random unit vector.
ComplexVector haar_vector(CounterRng& rng, int dim);

/// Haar-random isometry (dim x cols, orthonormal columns), via Gram-Schmidt on
/// a Ginibre matrix.
ComplexMatrix haar_isometry(CounterRng& rng, int dim, int cols);

}  // namespace cohere
