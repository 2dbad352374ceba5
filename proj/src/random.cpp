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

#include "cohere/random.hpp"

#include <cmath>
#include <numbers>

namespace cohere {

double CounterRng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double theta = 2.0 * std::numbers::pi * uniform();
  cached_ = r * std::sin(theta);
  has_cached_ = true;
  return r * std::cos(theta);
}

Complex CounterRng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

ComplexMatrix ginibre(CounterRng& rng, int rows, int cols) {
  ComplexMatrix g(rows, cols);
  // Row-major fill so the draw order does not depend on Eigen's storage.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
  }
  return g;
}

ComplexVector haar_vector(CounterRng& rng, int dim) {
  ComplexVector v = ginibre(rng, dim, 1).col(0);
  return v / v.norm();
}

ComplexMatrix haar_isometry(CounterRng& rng, int dim, int cols) {
  ComplexMatrix q = ginibre(rng, dim, cols);
  for (int j = 0; j < cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (int k = 0; k < j; ++k) q.col(j) -= q.col(k) * q.col(k).dot(q.col(j));
    }
    q.col(j) /= q.col(j).norm();
  }
  return q;
}

}  // namespace cohere
