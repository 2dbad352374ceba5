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

#include "cohere/qubit_analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "cohere/error.hpp"

namespace cohere {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

double BlochVector::norm() const { return std::sqrt(u1 * u1 + u2 * u2 + u3 * u3); }

namespace {

void require_qubit(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    std::ostringstream os;
    os << "expected a qubit, got dim " << rho.dim();
    throw Error(ErrorKind::WrongDimension, os.str());
  }
}

ComplexMatrix bloch_matrix(const BlochVector& u) {
  ComplexMatrix m(2, 2);
  m << Complex(0.5 * (1.0 + u.u3), 0.0), Complex(0.5 * u.u1, -0.5 * u.u2),
       Complex(0.5 * u.u1, 0.5 * u.u2), Complex(0.5 * (1.0 - u.u3), 0.0);
  return m;
}

double gram(const ComplexMatrix& inv, const ComplexVector& x, const ComplexVector& y, Complex* out = nullptr) {
  const Complex value = x.dot(inv * y);
  if (out) *out = value;
  return value.real();
}

ComplexVector normalized(const ComplexVector& v) {
  const double n = v.norm();
  if (n == 0.0) throw Error(ErrorKind::ZeroVector, "projector from zero vector");
  return v / n;
}

}  // namespace

DensityMatrix bloch_to_state(const BlochVector& u) {
  if (!(u.norm() <= 1.0 + 1e-10)) {
    std::ostringstream os;
    os << "|u| = " << u.norm() << " exceeds 1";
    throw Error(ErrorKind::BlochNormExceeded, os.str());
  }
  return DensityMatrix::from_trusted(bloch_matrix(u));
}

BlochVector state_to_bloch(const DensityMatrix& rho) {
  require_qubit(rho);
  return {2.0 * rho(0, 1).real(), -2.0 * rho(0, 1).imag(), rho(0, 0).real() - rho(1, 1).real()};
}

double bloch_inverse_residual(const DensityMatrix& rho) {
  require_qubit(rho);
  const BlochVector u = state_to_bloch(rho);
  const ComplexMatrix& m = rho.matrix();
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real();
  if (!(det > 0.0)) throw Error(ErrorKind::NotPsd, "inverse identity needs a full-rank qubit");
  const ComplexMatrix flipped = bloch_matrix({-u.u1, -u.u2, -u.u3}) / det;
  return (m.inverse() - flipped).cwiseAbs().maxCoeff();
}

QubitBranch qubit_branch(const DensityMatrix& rho) {
  require_qubit(rho);
  const double off = std::abs(rho(0, 1));
  return (rho(0, 0).real() >= off && rho(1, 1).real() >= off) ? QubitBranch::OffDiagonal : QubitBranch::Determinant;
}

double qubit_weight(const DensityMatrix& rho) {
  require_qubit(rho);
  const double a = rho(0, 0).real();
  const double b = rho(1, 1).real();
  const double off = std::abs(rho(0, 1));
  if (qubit_branch(rho) == QubitBranch::OffDiagonal) return 2.0 * off;
  const double det = a * b - off * off;
  return 1.0 - det / std::min(a, b);
}

char to_char(PairCase c) {
  switch (c) {
    case PairCase::A: return 'a';
    case PairCase::B: return 'b';
    case PairCase::C: return 'c';
    case PairCase::D: return 'd';
    case PairCase::E: return 'e';
  }
  return '?';
}

PairMaximalResult pair_maximal(const ComplexMatrix& m, const ComplexVector& psi1, const ComplexVector& psi2,
                               double tol) {
  const ComplexVector v1 = normalized(psi1);
  const ComplexVector v2 = normalized(psi2);
  const HermitianEig eig = eig_hermitian(m);
  const ComplexMatrix inv = pseudo_inverse(eig, tol);
  const bool in1 = range_membership(eig, v1, tol);
  const bool in2 = range_membership(eig, v2, tol);

  PairMaximalResult out;
  Complex cross;
  out.gram.g11 = gram(inv, v1, v1);
  out.gram.g22 = gram(inv, v2, v2);
  gram(inv, v1, v2, &cross);
  out.gram.cross = std::abs(cross);
  out.gram.det = out.gram.g11 * out.gram.g22 - out.gram.cross * out.gram.cross;

  if (!in1 && !in2) {
    out.case_label = PairCase::A;
    return out;
  }
  if (!in1 || !in2) {
    out.case_label = PairCase::B;
    if (in1) out.lambda1 = 1.0 / out.gram.g11;
    else out.lambda2 = 1.0 / out.gram.g22;
    return out;
  }

  // Order so that the first slot carries the larger Gram diagonal.
  const bool swapped = out.gram.g22 > out.gram.g11;
  const double big = swapped ? out.gram.g22 : out.gram.g11;
  const double small = swapped ? out.gram.g11 : out.gram.g22;
  const double c = out.gram.cross;
  const double scale = std::max(big, 1.0);
  double l_big = 0.0;
  double l_small = 0.0;

  out.gram.near_boundary = std::abs(small - c) <= 1e-12 * scale;
  if (c <= 1e-12 * big) {
    out.case_label = PairCase::C;
    l_big = 1.0 / big;
    l_small = 1.0 / small;
  } else if (small >= c - 1e-12 * scale && out.gram.det > 1e-12 * big * small) {
    out.case_label = PairCase::D;
    l_big = (small - c) / out.gram.det;
    l_small = (big - c) / out.gram.det;
    l_big = std::max(l_big, 0.0);
  } else {
    out.case_label = PairCase::E;
    l_big = 0.0;
    l_small = 1.0 / small;
  }
  out.lambda1 = swapped ? l_small : l_big;
  out.lambda2 = swapped ? l_big : l_small;
  return out;
}

PairMaximalResult pair_maximal(const DensityMatrix& rho, const ComplexVector& psi1, const ComplexVector& psi2,
                               double tol) {
  return pair_maximal(rho.matrix(), psi1, psi2, tol);
}

double max_single_subtraction(const ComplexMatrix& m, const ComplexVector& psi, double tol) {
  const ComplexVector v = normalized(psi);
  const HermitianEig eig = eig_hermitian(m);
  if (!range_membership(eig, v, tol)) return 0.0;
  return 1.0 / gram(pseudo_inverse(eig, tol), v, v);
}

double max_single_subtraction(const DensityMatrix& rho, const ComplexVector& psi, double tol) {
  return max_single_subtraction(rho.matrix(), psi, tol);
}

bool is_maximal_subtraction(const ComplexMatrix& m, const ComplexVector& psi, double amount, double eps,
                            double psd_tol) {
  const ComplexVector v = normalized(psi);
  const ComplexMatrix p = v * v.adjoint();
  return is_psd(m - amount * p, psd_tol) && !is_psd(m - (amount + eps) * p, 0.0);
}

bool is_maximal_pair(const ComplexMatrix& m, const ComplexVector& psi1, const ComplexVector& psi2,
                     const PairMaximalResult& pair, double eps, double psd_tol) {
  const ComplexVector v1 = normalized(psi1);
  const ComplexVector v2 = normalized(psi2);
  const ComplexMatrix p1 = v1 * v1.adjoint();
  const ComplexMatrix p2 = v2 * v2.adjoint();
  return is_maximal_subtraction(m - pair.lambda2 * p2, v1, pair.lambda1, eps, psd_tol) &&
         is_maximal_subtraction(m - pair.lambda1 * p1, v2, pair.lambda2, eps, psd_tol);
}

double mixedness_tradeoff(const DensityMatrix& rho) {
  const double cw = qubit_weight(rho);
  return cw * cw + 2.0 * (1.0 - purity(rho));
}

L1Comparison l1_comparison(const DensityMatrix& rho) {
  L1Comparison out;
  out.cw = qubit_weight(rho);
  out.cl1 = l1_coherence(rho.matrix());
  out.on_line = std::abs(out.cw - out.cl1) <= kOnLineTol;
  return out;
}

namespace {

void finish(VolumeCensus& census) {
  census.ratio = census.equal > 0 ? static_cast<double>(census.strict) / static_cast<double>(census.equal)
                                  : std::numeric_limits<double>::infinity();
}

}  // namespace

VolumeCensus volume_census(std::span<const DensityMatrix> states) {
  VolumeCensus out;
  for (const auto& rho : states) {
    if (l1_comparison(rho).on_line) ++out.equal;
    else ++out.strict;
  }
  finish(out);
  return out;
}

VolumeCensus volume_ratio(std::int64_t count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorKind::BadParameters, "count must be at least 1");
  VolumeCensus out;
  for (std::int64_t i = 0; i < count; ++i) {
    const DensityMatrix rho = sample_one(EnsembleKind::BlochBallUniform, 2, seed, static_cast<std::uint64_t>(i));
    if (l1_comparison(rho).on_line) ++out.equal;
    else ++out.strict;
  }
  finish(out);
  return out;
}

double cone_volume_ratio(double radius) {
  // Common factor pi/3 cancels: ball = 4 r^3, double cone = 2 r^2 h.
  const double h = radius;
  const double ball = 4.0 * radius * radius * radius;
  const double cones = 2.0 * radius * radius * h;
  return (ball - cones) / cones;
}

}  // namespace cohere
