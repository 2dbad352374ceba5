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

// Coherence weight C_w(rho) = min { 1 - sum_i lambda_i : lambda >= 0,
// rho - diag(lambda) >= 0 }, solved by a log-det barrier method on the
// range of rho and certified by a feasible witness of the dual program
// C_w(rho) = max { Tr(rho omega) : Delta(omega) <= 0, omega <= 1 }.

#include <optional>
#include <vector>

#include "cohere/hermitian.hpp"
#include "cohere/states.hpp"

namespace cohere {

inline constexpr double kCertifiedGap = 1e-6;
inline constexpr double kWitnessTol = 1e-8;

struct SolverConfig {
  double barrier_mu0 = 1.0;
  double mu_shrink = 0.1;
  double mu_floor = 1e-10;
  double newton_tol = 1e-10;  // on the squared Newton decrement
  int max_newton_iters = 100; // per barrier parameter
  double psd_tol = 1e-9;
  double rank_tol = kDefaultRankTol;

  /// Throws BadParameters.
  void validate() const;
};

/// Optimal split rho = (1 - weight) rho_f + weight rho_r.
struct BfaDecomposition {
  double weight = 0.0;
  RealVector lambda;
  std::optional<DensityMatrix> rho_f;  // present when weight < 1
  std::optional<DensityMatrix> rho_r;  // present when weight > 0
  double gap = 0.0;
};

struct DualWitness {
  ComplexMatrix omega;
  double bound = 0.0;  // Tr(rho omega)
};

/// Where the barrier method stopped. `range` is the isometry onto range(rho);
/// `free_index` lists the basis indices whose lambda was not forced to zero.
struct BarrierState {
  double mu = 0.0;
  RealVector lambda;               // full length dim
  ComplexMatrix range;             // dim x r
  RealVector range_eigenvalues;    // r
  std::vector<int> free_index;
  ComplexMatrix slack_inverse;     // r x r, X(lambda)^{-1}; empty when no free index
  int newton_iterations = 0;
};

struct WeightSolution {
  BfaDecomposition decomposition;
  DualWitness witness;
  BarrierState state;
};

/// Full solve: decomposition, witness and final barrier state. Throws
/// SolverStall when Newton runs out of budget before the certified gap
/// reaches kCertifiedGap.
WeightSolution solve_weight(const DensityMatrix& rho, const SolverConfig& cfg = {});

BfaDecomposition coherence_weight(const DensityMatrix& rho, const SolverConfig& cfg = {});

/// Lifts mu X^{-1} from the range to a feasible dual point. Throws
/// InfeasibleWitness if the result fails the numerical feasibility check.
DualWitness dual_witness(const DensityMatrix& rho, const BarrierState& state);

/// Checks a witness omega: diag(omega) <= tol and omega <= 1 + tol.
bool witness_feasible(const ComplexMatrix& omega, double tol = kWitnessTol);

/// dec.weight - w.bound after checking both sides. Throws PrimalInfeasible or
/// DualInfeasible.
double verify_certificate(const DensityMatrix& rho, const BfaDecomposition& dec, const DualWitness& w,
                          double psd_tol = 1e-9);

struct BoundaryDiagnostics {
  double rho_r_min_eig = 0.0;
  double rho_f_min_diag = 0.0;
  double collinearity_residual = 0.0;  // |(1-w) - ||rho - rho_r|| / ||rho_r - rho_f|| |
};

/// Needs the original state for the collinearity residual. Throws MissingPart
/// when either part is absent.
BoundaryDiagnostics boundary_diagnostics(const DensityMatrix& rho, const BfaDecomposition& dec);

struct MonotoneBound {
  double lhs = 0.0;  // C_l1 / (d - 1)
  double rhs = 0.0;  // C_w
};

MonotoneBound normalized_monotone_bound(const DensityMatrix& rho, const SolverConfig& cfg = {});

}  // namespace cohere
