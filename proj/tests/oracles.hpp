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

// Test-only reference computations. None of these call into the solver or
// the library eigensolver, so they serve as independent checks.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "cohere/hermitian.hpp"

namespace cohere::oracle {

/// Eigenvalues (ascending) from Eigen's own Hermitian solver.
inline RealVector eigen_eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double eigen_min_eigenvalue(const ComplexMatrix& m) { return eigen_eigenvalues(m)(0); }

/// Roots of the characteristic polynomial of a 2x2 Hermitian matrix,
/// (tr -/+ sqrt(tr^2 - 4 det)) / 2.
inline std::array<double, 2> qubit_eigenvalues(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double tr = a + d;
  const double det = a * d - std::norm(m(0, 1));
  const double disc = std::sqrt(std::max(tr * tr - 4.0 * det, 0.0));
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

/// Inverse of a full-rank qubit state through its Bloch vector:
/// rho_u^{-1} = rho_{-u} / det(rho_u).
inline ComplexMatrix qubit_inverse(const ComplexMatrix& m) {
  const double det = m(0, 0).real() * m(1, 1).real() - std::norm(m(0, 1));
  ComplexMatrix flipped(2, 2);
  flipped << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return flipped / det;
}

/// Largest value of min eig(rho - diag(lambda)) over lambda on the simplex
/// {lambda >= 0, sum lambda = s}, for d <= 3. The objective is concave in
/// lambda, so a coarse grid followed by a shrinking compass and random
/// direction search converges to the maximum.
inline double best_slack(const ComplexMatrix& rho, double s, std::mt19937_64& rng) {
  const auto d = rho.rows();
  auto f = [&](const Eigen::VectorXd& lam) {
    ComplexMatrix m = rho;
    for (Eigen::Index i = 0; i < d; ++i) m(i, i) -= lam(i);
    return eigen_min_eigenvalue(m);
  };
  if (d == 1) return f(Eigen::VectorXd::Constant(1, s));
  if (d > 3) throw std::invalid_argument("best_slack supports d <= 3");

  // Barycentric grid.
  const int n = d == 2 ? 200 : 40;
  Eigen::VectorXd best = Eigen::VectorXd::Constant(d, s / static_cast<double>(d));
  double best_value = f(best);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= (d == 3 ? n - i : 0); ++j) {
      Eigen::VectorXd lam(d);
      if (d == 2) {
        lam << s * i / n, s * (n - i) / n;
      } else {
        lam << s * i / n, s * j / n, s * (n - i - j) / n;
      }
      const double v = f(lam);
      if (v > best_value) {
        best_value = v;
        best = lam;
      }
    }
  }

  // Local refinement along simplex-preserving directions e_a - e_b plus random
  // zero-sum directions.
  std::normal_distribution<double> gauss(0.0, 1.0);
  double h = s / n;
  while (h > 1e-12 * std::max(s, 1e-300) && h > 1e-15) {
    bool improved = false;
    auto try_dir = [&](const Eigen::VectorXd& dir) {
      Eigen::VectorXd trial = best + h * dir;
      if ((trial.array() < 0.0).any()) return;
      const double v = f(trial);
      if (v > best_value) {
        best_value = v;
        best = trial;
        improved = true;
      }
    };
    for (Eigen::Index a = 0; a < d; ++a) {
      for (Eigen::Index b = 0; b < d; ++b) {
        if (a == b) continue;
        Eigen::VectorXd dir = Eigen::VectorXd::Zero(d);
        dir(a) = 1.0;
        dir(b) = -1.0;
        try_dir(dir);
      }
    }
    for (int r = 0; r < 8; ++r) {
      Eigen::VectorXd dir(d);
      for (Eigen::Index i = 0; i < d; ++i) dir(i) = gauss(rng);
      dir.array() -= dir.mean();
      const double norm = dir.lpNorm<Eigen::Infinity>();
      if (norm > 0.0) try_dir(dir / norm);
    }
    if (!improved) h *= 0.5;
  }
  return best_value;
}

/// Coherence weight by bisection on the total incoherent mass s: s is
/// feasible when some lambda on the s-simplex leaves rho - diag(lambda) PSD.
/// Accurate to about 1e-6 for d <= 3; tests compare at 1e-3.
inline double brute_force_weight(const ComplexMatrix& rho, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < 25; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (best_slack(rho, mid, rng) >= -1e-12) lo = mid;
    else hi = mid;
  }
  return 1.0 - lo;
}

}  // namespace cohere::oracle
