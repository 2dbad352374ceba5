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
#include <span>

#include "cohere/hermitian.hpp"
#include "cohere/states.hpp"

namespace cohere {

inline constexpr double kOnLineTol = 1e-10;

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

struct BlochVector {
  double u1 = 0.0;
  double u2 = 0.0;
  double u3 = 0.0;

  double norm() const;
};

/// rho_u = (1 + u.sigma)/2. Throws BlochNormExceeded for |u| > 1 + 1e-10.
DensityMatrix bloch_to_state(const BlochVector& u);
/// Throws WrongDimension.
BlochVector state_to_bloch(const DensityMatrix& rho);

/// max |rho^{-1} - rho_{-u} / det(rho)| for a full-rank qubit. A value near
/// machine precision confirms the inverse identity of the Bloch representation.
double bloch_inverse_residual(const DensityMatrix& rho);

enum class QubitBranch { OffDiagonal, Determinant };

/// Which closed-form branch applies: OffDiagonal when rho00, rho11 >= |rho01|.
QubitBranch qubit_branch(const DensityMatrix& rho);

/// Closed-form qubit coherence weight:
///   2|rho01|                       if rho00, rho11 >= |rho01|
///   1 - det(rho) / min(rho00, rho11) otherwise.
/// Throws WrongDimension.
double qubit_weight(const DensityMatrix& rho);

enum class PairCase { A, B, C, D, E };
char to_char(PairCase c);

/// Gram entries in the caller's argument order.
struct PairGram {
  double g11 = 0.0;    // <psi1|rho^+|psi1>
  double g22 = 0.0;    // <psi2|rho^+|psi2>
  double cross = 0.0;  // |<psi1|rho^+|psi2>|
  double det = 0.0;    // g11 g22 - cross^2
  bool near_boundary = false;  // cross within 1e-12 of the smaller diagonal
};

struct PairMaximalResult {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  PairCase case_label = PairCase::A;
  PairGram gram;
};

/// Maximal pair (Lambda1, Lambda2) for subtracting |psi1><psi1| and
/// |psi2><psi2| from a PSD Hermitian matrix. The inverse is the
/// pseudo-inverse on the range; range membership decides the case split.
/// Vectors are normalized first. Throws NotPsd, ZeroVector.
PairMaximalResult pair_maximal(const ComplexMatrix& m, const ComplexVector& psi1, const ComplexVector& psi2,
                               double tol = kDefaultRankTol);
PairMaximalResult pair_maximal(const DensityMatrix& rho, const ComplexVector& psi1, const ComplexVector& psi2,
                               double tol = kDefaultRankTol);

/// 0 when psi is outside the range, else 1 / <psi|m^+|psi>.
double max_single_subtraction(const ComplexMatrix& m, const ComplexVector& psi, double tol = kDefaultRankTol);
double max_single_subtraction(const DensityMatrix& rho, const ComplexVector& psi, double tol = kDefaultRankTol);

/// m - amount |psi><psi| is PSD while m - (amount + eps)|psi><psi| is not.
bool is_maximal_subtraction(const ComplexMatrix& m, const ComplexVector& psi, double amount, double eps,
                            double psd_tol = 1e-9);

/// Both coordinates of the pair are maximal given the other one.
bool is_maximal_pair(const ComplexMatrix& m, const ComplexVector& psi1, const ComplexVector& psi2,
                     const PairMaximalResult& pair, double eps, double psd_tol = 1e-9);

/// C_w^2 + M for a qubit, M = 2(1 - Tr rho^2).
double mixedness_tradeoff(const DensityMatrix& rho);

struct L1Comparison {
  double cw = 0.0;
  double cl1 = 0.0;
  bool on_line = false;  // |cw - cl1| <= 1e-10
};

L1Comparison l1_comparison(const DensityMatrix& rho);

struct VolumeCensus {
  std::int64_t strict = 0;  // C_w > C_l1
  std::int64_t equal = 0;   // C_w = C_l1 at 1e-10
  double ratio = 0.0;       // strict / equal
};

VolumeCensus volume_census(std::span<const DensityMatrix> states);

/// Census over `count` uniform Bloch-ball qubits. Throws BadParameters for count < 1.
VolumeCensus volume_ratio(std::int64_t count, std::uint64_t seed);

/// Volume of the region off the line over the region on it: the ball of
/// radius r minus a double cone of height h = r, divided by that double cone.
double cone_volume_ratio(double radius = 1.0);

}  // namespace cohere
