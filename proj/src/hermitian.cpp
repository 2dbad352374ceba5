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

#include "cohere/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "cohere/error.hpp"

namespace cohere {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::DimensionZero: return "DimensionZero";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InvalidState: return "InvalidState";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnsupportedDim: return "UnsupportedDim";
    case ErrorKind::WrongDimension: return "WrongDimension";
    case ErrorKind::BlochNormExceeded: return "BlochNormExceeded";
    case ErrorKind::SolverStall: return "SolverStall";
    case ErrorKind::InfeasibleWitness: return "InfeasibleWitness";
    case ErrorKind::PrimalInfeasible: return "PrimalInfeasible";
    case ErrorKind::DualInfeasible: return "DualInfeasible";
    case ErrorKind::MissingPart: return "MissingPart";
    case ErrorKind::BadParameters: return "BadParameters";
  }
  return "Unknown";
}

namespace {

constexpr int kMaxSweeps = 64;
constexpr double kOffDiagonalRelTol = 1e-14;

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  const auto n = a.rows();
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      if (p != q) s += std::norm(a(p, q));
    }
  }
  return std::sqrt(s);
}

// Zeroes a(p,q) with the unitary J = diag(1, e^{-i phi}) * R(c, s) acting on
// the (p,q) plane: A <- J^dagger A J, V <- V J.
void rotate(ComplexMatrix& a, ComplexMatrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const Complex jqp = -s * std::conj(phase);
  const Complex jqq = c * std::conj(phase);
  const auto n = a.rows();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * c + akq * jqp;
    a(k, q) = akp * s + akq * jqq;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk + std::conj(jqp) * aqk;
    a(q, k) = s * apk + std::conj(jqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = vkp * c + vkq * jqp;
    v(k, q) = vkp * s + vkq * jqq;
  }
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

ComplexMatrix hermitize(const ComplexMatrix& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) throw Error(ErrorKind::DimensionZero, "empty matrix");
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << "matrix is " << m.rows() << "x" << m.cols();
    throw Error(ErrorKind::DimensionMismatch, os.str());
  }
  if (!m.allFinite()) throw Error(ErrorKind::NonHermitian, "matrix has non-finite entries");
  const double defect = hermiticity_defect(m);
  if (defect > tol) {
    std::ostringstream os;
    os << "hermiticity defect " << defect << " exceeds " << tol;
    throw Error(ErrorKind::NonHermitian, os.str());
  }
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = h(i, i).real();
  return h;
}

HermitianEig eig_hermitian(const ComplexMatrix& m) {
  ComplexMatrix a = hermitize(m);
  const auto n = a.rows();
  ComplexMatrix v = ComplexMatrix::Identity(n, n);

  const double threshold = kOffDiagonalRelTol * a.norm();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= threshold) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
    return a(x, x).real() < a(y, y).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto src = order[static_cast<std::size_t>(k)];
    out.eigenvalues(k) = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

double min_eigenvalue(const ComplexMatrix& m) { return eig_hermitian(m).eigenvalues(0); }

bool is_psd(const ComplexMatrix& m, double tol) { return min_eigenvalue(m) >= -tol; }

double determinant(const ComplexMatrix& m) { return eig_hermitian(m).eigenvalues.prod(); }

namespace {

double range_cutoff(const HermitianEig& eig, double rank_tol) {
  const double top = eig.eigenvalues(eig.dim() - 1);
  return rank_tol * std::max(top, 0.0);
}

}  // namespace

ComplexMatrix pseudo_inverse(const HermitianEig& eig, double rank_tol) {
  if (eig.eigenvalues(0) < -kNotPsdTol) {
    std::ostringstream os;
    os << "min eigenvalue " << eig.eigenvalues(0);
    throw Error(ErrorKind::NotPsd, os.str());
  }
  const double cutoff = range_cutoff(eig, rank_tol);
  const auto n = eig.dim();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double e = eig.eigenvalues(k);
    if (e > cutoff && e > 0.0) {
      out.noalias() += (1.0 / e) * eig.eigenvectors.col(k) * eig.eigenvectors.col(k).adjoint();
    }
  }
  return out;
}

ComplexMatrix pseudo_inverse(const ComplexMatrix& m, double rank_tol) {
  return pseudo_inverse(eig_hermitian(m), rank_tol);
}

ComplexMatrix range_basis(const HermitianEig& eig, double rank_tol) {
  const double cutoff = range_cutoff(eig, rank_tol);
  const auto n = eig.dim();
  int first = 0;
  while (first < n && !(eig.eigenvalues(first) > cutoff && eig.eigenvalues(first) > 0.0)) ++first;
  return eig.eigenvectors.rightCols(n - first);
}

ComplexMatrix kernel_basis(const HermitianEig& eig, double rank_tol) {
  const auto n = eig.dim();
  const auto rank = range_basis(eig, rank_tol).cols();
  return eig.eigenvectors.leftCols(n - rank);
}

bool range_membership(const HermitianEig& eig, const ComplexVector& v, double tol) {
  const double norm = v.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "range_membership needs a nonzero vector");
  if (v.size() != eig.dim()) throw Error(ErrorKind::DimensionMismatch, "vector length differs from matrix dimension");
  const ComplexMatrix basis = range_basis(eig, tol);
  const ComplexVector residual = v - basis * (basis.adjoint() * v);
  return residual.norm() <= tol * norm;
}

bool range_membership(const ComplexMatrix& m, const ComplexVector& v, double tol) {
  return range_membership(eig_hermitian(m), v, tol);
}

}  // namespace cohere
