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

#include "cohere/weight_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cohere/error.hpp"

namespace cohere {

void SolverConfig::validate() const {
  const bool ok = barrier_mu0 > 0.0 && mu_shrink > 0.0 && mu_shrink < 1.0 && mu_floor > 0.0 &&
                  mu_floor <= barrier_mu0 && newton_tol > 0.0 && max_newton_iters > 0 && psd_tol > 0.0 &&
                  rank_tol > 0.0;
  if (!ok) throw Error(ErrorKind::BadParameters, "invalid solver configuration");
}

namespace {

// Reduced problem on range(rho): maximise sum(lambda) subject to
// X(lambda) = diag(range_eigenvalues) - sum_i lambda_i a_i a_i^dagger > 0,
// a_i = V^dagger e_i for the free indices i.
class ReducedBarrier {
 public:
  ReducedBarrier(const RealVector& range_eigenvalues, ComplexMatrix a)
      : base_(range_eigenvalues.cast<Complex>().asDiagonal()), a_(std::move(a)) {}

  int size() const { return static_cast<int>(a_.cols()); }

  ComplexMatrix slack(const RealVector& lambda) const {
    return base_ - a_ * lambda.cast<Complex>().asDiagonal() * a_.adjoint();
  }

  bool strictly_feasible(const RealVector& lambda) const {
    if ((lambda.array() <= 0.0).any()) return false;
    Eigen::LLT<ComplexMatrix> llt(slack(lambda));
    if (llt.info() != Eigen::Success) return false;
    const auto diag = llt.matrixLLT().diagonal();
    for (Eigen::Index i = 0; i < diag.size(); ++i) {
      if (!(diag(i).real() > 0.0)) return false;
    }
    return true;
  }

  // Largest single subtraction along each free direction, 1 / a_i^dagger base^{-1} a_i.
  RealVector start_point() const {
    const int k = size();
    RealVector lambda(k);
    for (int i = 0; i < k; ++i) {
      const double q = (a_.col(i).adjoint() * base_.diagonal().cwiseInverse().asDiagonal() * a_.col(i))(0, 0).real();
      lambda(i) = 1.0 / (2.0 * k * q);
    }
    return lambda;
  }

  // Runs Newton on  -sum(lambda)/mu - log det X - sum log lambda  from `lambda`.
  // Returns true once the squared decrement falls below newton_tol.
  bool centre(RealVector& lambda, double mu, const SolverConfig& cfg, ComplexMatrix& x_inverse, int& iterations) const {
    const int k = size();
    const auto r = base_.rows();
    bool converged = false;
    for (int it = 0; it < cfg.max_newton_iters; ++it) {
      Eigen::LLT<ComplexMatrix> llt(slack(lambda));
      x_inverse = llt.solve(ComplexMatrix::Identity(r, r));
      const ComplexMatrix w = a_.adjoint() * x_inverse * a_;

      RealVector grad(k);
      Eigen::MatrixXd hess(k, k);
      for (int i = 0; i < k; ++i) {
        grad(i) = -1.0 / mu + w(i, i).real() - 1.0 / lambda(i);
        for (int j = 0; j < k; ++j) hess(i, j) = std::norm(w(i, j));
        hess(i, i) += 1.0 / (lambda(i) * lambda(i));
      }
      const RealVector step = hess.ldlt().solve(-grad);
      const double decrement2 = -grad.dot(step);
      if (!std::isfinite(decrement2)) break;
      if (decrement2 <= cfg.newton_tol) {
        converged = true;
        break;
      }
      ++iterations;

      // Damped step for self-concordant barriers, then halve until strictly feasible.
      const double decrement = std::sqrt(std::max(decrement2, 0.0));
      double t = decrement > 0.25 ? 1.0 / (1.0 + decrement) : 1.0;
      bool moved = false;
      for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
        const RealVector trial = lambda + t * step;
        if (strictly_feasible(trial)) {
          lambda = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    Eigen::LLT<ComplexMatrix> llt(slack(lambda));
    x_inverse = llt.solve(ComplexMatrix::Identity(r, r));
    return converged;
  }

 private:
  ComplexMatrix base_;
  ComplexMatrix a_;
};

BfaDecomposition assemble(const DensityMatrix& rho, const RealVector& lambda, double weight) {
  BfaDecomposition dec;
  dec.weight = weight;
  dec.lambda = lambda;
  const double incoherent = lambda.sum();
  if (weight < 1.0 && incoherent > 0.0) {
    dec.rho_f = DensityMatrix::from_trusted((lambda / incoherent).cast<Complex>().asDiagonal());
  }
  if (weight > 0.0) {
    const ComplexMatrix remainder = rho.matrix() - ComplexMatrix(lambda.cast<Complex>().asDiagonal());
    dec.rho_r = DensityMatrix::from_trusted(remainder / weight);
  }
  return dec;
}

}  // namespace

bool witness_feasible(const ComplexMatrix& omega, double tol) {
  for (Eigen::Index i = 0; i < omega.rows(); ++i) {
    if (omega(i, i).real() > tol) return false;
  }
  const ComplexMatrix z = ComplexMatrix::Identity(omega.rows(), omega.cols()) - omega;
  return min_eigenvalue(z) >= -tol;
}

DualWitness dual_witness(const DensityMatrix& rho, const BarrierState& state) {
  const int d = rho.dim();
  const ComplexMatrix& v = state.range;
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  if (state.slack_inverse.size() > 0) z = v * (state.mu * state.slack_inverse) * v.adjoint();

  // Forced indices (outside the range) get their diagonal lifted to 1 with a
  // multiple of the kernel projector. Z is then rescaled so its smallest
  // diagonal entry is exactly 1, which removes any deficit and any slack.
  const ComplexMatrix kernel = ComplexMatrix::Identity(d, d) - v * v.adjoint();
  double scale = 0.0;
  for (int i = 0; i < d; ++i) {
    if (std::find(state.free_index.begin(), state.free_index.end(), i) != state.free_index.end()) continue;
    const double deficit = 1.0 - z(i, i).real();
    const double overlap = kernel(i, i).real();
    if (deficit > 0.0 && overlap > 0.0) scale = std::max(scale, deficit / overlap);
  }
  if (scale > 0.0) z += scale * kernel;

  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < d; ++i) lowest = std::min(lowest, z(i, i).real());
  if (!(lowest > 0.0)) throw Error(ErrorKind::InfeasibleWitness, "witness has a non-positive diagonal entry");
  z /= lowest;

  DualWitness w;
  w.omega = ComplexMatrix::Identity(d, d) - z;
  w.omega = 0.5 * (w.omega + w.omega.adjoint()).eval();
  if (!witness_feasible(w.omega)) throw Error(ErrorKind::InfeasibleWitness, "constructed witness failed verification");
  w.bound = (rho.matrix() * w.omega).trace().real();
  return w;
}

WeightSolution solve_weight(const DensityMatrix& rho, const SolverConfig& cfg) {
  cfg.validate();
  const int d = rho.dim();
  WeightSolution sol;

  if (off_diagonal_norm(rho.matrix()) == 0.0) {
    const RealVector lambda = rho.matrix().diagonal().real();
    sol.decomposition = assemble(rho, lambda, 0.0);
    sol.witness.omega = ComplexMatrix::Zero(d, d);
    sol.witness.bound = 0.0;
    sol.decomposition.gap = 0.0;
    sol.state.lambda = lambda;
    sol.state.range = ComplexMatrix::Identity(d, d);
    sol.state.range_eigenvalues = lambda;
    return sol;
  }

  const HermitianEig eig = eig_hermitian(rho.matrix());
  BarrierState& state = sol.state;
  state.range = range_basis(eig, cfg.rank_tol);
  const auto r = state.range.cols();
  state.range_eigenvalues = eig.eigenvalues.tail(r);

  // Support rule: lambda_i must vanish unless |i> lies in range(rho).
  for (int i = 0; i < d; ++i) {
    if (range_membership(eig, ComplexVector::Unit(d, i), cfg.rank_tol)) state.free_index.push_back(i);
  }
  const int k = static_cast<int>(state.free_index.size());
  state.lambda = RealVector::Zero(d);

  // Every centred iterate yields a feasible witness; the tightest one is kept
  // because round-off in mu X^{-1} grows as mu shrinks.
  bool stalled = false;
  std::optional<DualWitness> best;
  auto offer_witness = [&] {
    try {
      DualWitness w = dual_witness(rho, state);
      if (!best || w.bound > best->bound) best = std::move(w);
    } catch (const Error&) {
    }
  };

  if (k > 0) {
    ComplexMatrix a(r, k);
    for (int j = 0; j < k; ++j) a.col(j) = state.range.row(state.free_index[static_cast<std::size_t>(j)]).adjoint();
    ReducedBarrier barrier(state.range_eigenvalues, a);

    RealVector lambda = barrier.start_point();
    double mu = cfg.barrier_mu0;
    for (;;) {
      if (!barrier.centre(lambda, mu, cfg, state.slack_inverse, state.newton_iterations)) stalled = true;
      state.mu = mu;
      for (int j = 0; j < k; ++j) state.lambda(state.free_index[static_cast<std::size_t>(j)]) = lambda(j);
      offer_witness();
      if (mu <= cfg.mu_floor) break;
      mu = std::max(mu * cfg.mu_shrink, cfg.mu_floor);
    }
  } else {
    offer_witness();
  }
  if (!best) throw Error(ErrorKind::InfeasibleWitness, "no feasible dual witness could be constructed");

  const double weight = 1.0 - state.lambda.sum();
  sol.decomposition = assemble(rho, state.lambda, weight);
  sol.witness = std::move(*best);
  // Weak duality makes the gap nonnegative; a negative value beyond round-off
  // means one side of the certificate is wrong.
  const double raw_gap = weight - sol.witness.bound;
  if (raw_gap < -kWitnessTol) throw Error(ErrorKind::InfeasibleWitness, "dual bound exceeds the primal value");
  sol.decomposition.gap = std::max(raw_gap, 0.0);

  if (sol.decomposition.gap > kCertifiedGap) {
    std::ostringstream os;
    os << "certified gap " << sol.decomposition.gap << " after " << state.newton_iterations << " Newton steps"
       << (stalled ? " (Newton budget exhausted)" : "");
    throw SolverStall(os.str(), sol.witness.bound, weight);
  }
  return sol;
}

BfaDecomposition coherence_weight(const DensityMatrix& rho, const SolverConfig& cfg) {
  return solve_weight(rho, cfg).decomposition;
}

double verify_certificate(const DensityMatrix& rho, const BfaDecomposition& dec, const DualWitness& w,
                          double psd_tol) {
  const int d = rho.dim();
  if (dec.lambda.size() != d || w.omega.rows() != d || w.omega.cols() != d) {
    throw Error(ErrorKind::DimensionMismatch, "certificate dimensions do not match the state");
  }
  if ((dec.lambda.array() < -1e-12).any()) throw Error(ErrorKind::PrimalInfeasible, "negative lambda entry");
  const ComplexMatrix slack = rho.matrix() - ComplexMatrix(dec.lambda.cast<Complex>().asDiagonal());
  const double lowest = min_eigenvalue(slack);
  if (lowest < -psd_tol) {
    std::ostringstream os;
    os << "rho - diag(lambda) has eigenvalue " << lowest;
    throw Error(ErrorKind::PrimalInfeasible, os.str());
  }
  if (!witness_feasible(w.omega)) throw Error(ErrorKind::DualInfeasible, "omega violates diag <= 0 or omega <= 1");
  return dec.weight - w.bound;
}

BoundaryDiagnostics boundary_diagnostics(const DensityMatrix& rho, const BfaDecomposition& dec) {
  if (!dec.rho_f || !dec.rho_r) throw Error(ErrorKind::MissingPart, "decomposition lacks an incoherent or coherent part");
  BoundaryDiagnostics out;
  out.rho_r_min_eig = min_eigenvalue(dec.rho_r->matrix());
  out.rho_f_min_diag = dec.rho_f->matrix().diagonal().real().minCoeff();
  const double along = (rho.matrix() - dec.rho_r->matrix()).norm();
  const double span = (dec.rho_r->matrix() - dec.rho_f->matrix()).norm();
  out.collinearity_residual = std::abs((1.0 - dec.weight) - along / span);
  return out;
}

MonotoneBound normalized_monotone_bound(const DensityMatrix& rho, const SolverConfig& cfg) {
  MonotoneBound out;
  const int d = rho.dim();
  out.lhs = d > 1 ? l1_coherence(rho.matrix()) / (d - 1) : 0.0;
  out.rhs = coherence_weight(rho, cfg).weight;
  return out;
}

}  // namespace cohere
