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

// Dense complex-Hermitian kernel. Small matrices only (d up to a few
// hundred); everything here is a pure function of its inputs.

#include <complex>

#include <Eigen/Dense>

namespace cohere {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermiticityTol = 1e-10;
inline constexpr double kDefaultRankTol = 1e-10;
inline constexpr double kNotPsdTol = 1e-9;

struct HermitianEig {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // columns, unitary

  int dim() const { return static_cast<int>(eigenvalues.size()); }
};

/// max_ij |m_ij - conj(m_ji)|
double hermiticity_defect(const ComplexMatrix& m);

/// Returns (m + m^dagger)/2. Throws NonHermitian if the defect exceeds `tol`,
/// DimensionZero for an empty matrix and DimensionMismatch if m is not square.
ComplexMatrix hermitize(const ComplexMatrix& m, double tol = kHermiticityTol);

/// Cyclic complex Jacobi, row-major sweep order. Eigenvalues are sorted
/// ascending; the output is bitwise deterministic for identical input.
HermitianEig eig_hermitian(const ComplexMatrix& m);

double min_eigenvalue(const ComplexMatrix& m);
bool is_psd(const ComplexMatrix& m, double tol);

/// Product of eigenvalues.
double determinant(const ComplexMatrix& m);

/// Moore-Penrose inverse restricted to eigenvalues above rank_tol * max eigenvalue.
ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double rank_tol = kDefaultRankTol);
ComplexMatrix pseudo_inverse(const HermitianEig& eig, double rank_tol = kDefaultRankTol);

/// Columns spanning the eigenspaces with eigenvalue > rank_tol * max eigenvalue.
ComplexMatrix range_basis(const HermitianEig& eig, double rank_tol = kDefaultRankTol);
/// Columns spanning the complement of range_basis.
ComplexMatrix kernel_basis(const HermitianEig& eig, double rank_tol = kDefaultRankTol);

/// True iff ||(1 - P_range) v|| <= tol ||v||, with the range taken at the same
/// relative tolerance. Throws ZeroVector.
bool range_membership(const ComplexMatrix& m, const ComplexVector& v, double tol = kDefaultRankTol);
bool range_membership(const HermitianEig& eig, const ComplexVector& v, double tol = kDefaultRankTol);

}  // namespace cohere
