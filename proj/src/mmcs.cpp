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

#include "cohere/mmcs.hpp"

#include <cmath>
#include <sstream>

#include "cohere/error.hpp"
#include "cohere/random.hpp"

namespace cohere {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kMinRandomAmplitude = 1e-3;

ComplexVector haar_vector_with_support(CounterRng& rng, int dim) {
  for (;;) {
    ComplexVector v = haar_vector(rng, dim);
    if (v.cwiseAbs().minCoeff() >= kMinRandomAmplitude) return v;
  }
}

void require_normalized(const ComplexVector& v, const char* what) {
  if (v.size() == 0 || std::abs(v.norm() - 1.0) > kNormTol) {
    throw Error(ErrorKind::BadParameters, std::string(what) + " must be a normalized vector");
  }
}

DensityMatrix build_kernel_family(const KernelFamily& fam, std::uint64_t seed) {
  const auto d = static_cast<int>(fam.kernel.size());
  if (d < 2) throw Error(ErrorKind::BadParameters, "kernel family needs dim >= 2");
  require_normalized(fam.kernel, "kernel vector");
  if (coherence_rank(fam.kernel) != d) {
    throw Error(ErrorKind::BadParameters, "kernel vector must have every amplitude nonzero");
  }
  if (!(fam.mix >= 0.0 && fam.mix <= 1.0)) throw Error(ErrorKind::BadParameters, "mix must lie in [0, 1]");

  const ComplexMatrix q = ComplexMatrix::Identity(d, d) - fam.kernel * fam.kernel.adjoint();
  ComplexMatrix m = (1.0 - fam.mix) * q / static_cast<double>(d - 1);
  if (fam.mix > 0.0) {
    CounterRng rng(seed);
    const ComplexMatrix g = q * ginibre(rng, d, d);
    const ComplexMatrix w = g * g.adjoint();
    m += fam.mix * w / w.trace().real();
  }
  return DensityMatrix(m / m.trace().real());
}

DensityMatrix build_reversible(const ReversibleFamily& fam) {
  if (fam.blocks.empty()) throw Error(ErrorKind::BadParameters, "reversible family needs blocks");
  DirectSumSpec spec;
  double total = 0.0;
  for (const auto& b : fam.blocks) {
    require_normalized(b.state, "block state");
    if (!(b.weight > 0.0)) throw Error(ErrorKind::BadParameters, "block weights must be positive");
    if (coherence_rank(b.state) < 2) throw Error(ErrorKind::BadParameters, "every block needs coherence rank >= 2");
    total += b.weight;
    spec.blocks.push_back({b.weight, DensityMatrix::pure(b.state)});
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::BadParameters, "block weights must sum to 1");
  return direct_sum(spec);
}

}  // namespace

std::string_view to_string(QutritClass c) {
  switch (c) {
    case QutritClass::NotApplicable: return "not_applicable";
    case QutritClass::Mmcs: return "mmcs";
    case QutritClass::NotMmcs: return "not_mmcs";
  }
  return "unknown";
}

MmcsVerdict classify(const DensityMatrix& rho, double rank_tol, double coherence_rank_tol) {
  const int d = rho.dim();
  if (d < 2) throw Error(ErrorKind::InvalidState, "classification needs dim >= 2");
  const HermitianEig eig = eig_hermitian(rho.matrix());
  const ComplexMatrix kernel = kernel_basis(eig, rank_tol);
  const auto nullity = static_cast<int>(kernel.cols());

  MmcsVerdict out;
  out.is_rank_deficient = nullity > 0;
  for (int k = 0; k < nullity; ++k) out.kernel_vectors.push_back(kernel.col(k));
  for (int i = 0; i < d; ++i) {
    if (nullity > 0 && kernel.row(i).norm() > coherence_rank_tol) ++out.max_kernel_coherence_rank;
  }
  out.theorem2_applies = out.is_rank_deficient && out.max_kernel_coherence_rank == d;
  out.participation_ratio = 1.0 / purity(rho);

  if (d == 3) {
    const int rank = d - nullity;
    if (rank == 2) out.qutrit_classification = out.theorem2_applies ? QutritClass::Mmcs : QutritClass::NotMmcs;
    else if (rank == 3) out.qutrit_classification = QutritClass::NotMmcs;
  }
  return out;
}

DensityMatrix construct(const MmcsConstructionSpec& spec, std::uint64_t seed) {
  if (const auto* fam = std::get_if<KernelFamily>(&spec)) return build_kernel_family(*fam, seed);
  return build_reversible(std::get<ReversibleFamily>(spec));
}

KernelFamily random_kernel_family(int dim, std::uint64_t seed, std::uint64_t index) {
  if (dim < 2) throw Error(ErrorKind::BadParameters, "kernel family needs dim >= 2");
  CounterRng rng = CounterRng::substream(seed, index);
  KernelFamily fam;
  fam.kernel = haar_vector_with_support(rng, dim);
  fam.mix = rng.uniform();
  return fam;
}

ReversibleFamily random_reversible_family(const std::vector<int>& block_sizes, std::uint64_t seed,
                                          std::uint64_t index) {
  if (block_sizes.empty()) throw Error(ErrorKind::BadParameters, "no blocks");
  CounterRng rng = CounterRng::substream(seed, index);
  ReversibleFamily fam;
  double total = 0.0;
  for (const int size : block_sizes) {
    if (size < 2) throw Error(ErrorKind::BadParameters, "blocks need size >= 2");
    const double w = -std::log(rng.uniform());
    fam.blocks.push_back({w, haar_vector_with_support(rng, size)});
    total += w;
  }
  for (auto& b : fam.blocks) b.weight /= total;
  return fam;
}

ReversibleFamily random_reversible_family(int dim, std::uint64_t seed, std::uint64_t index) {
  if (dim < 2) throw Error(ErrorKind::BadParameters, "reversible family needs dim >= 2");
  // Separate stream for the composition so block contents match the explicit-size overload.
  CounterRng rng = CounterRng::substream(~seed, index);
  std::vector<int> sizes;
  int remaining = dim;
  while (remaining > 0) {
    int size = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(remaining - 1));
    if (remaining - size == 1) size = remaining;
    sizes.push_back(size);
    remaining -= size;
  }
  return random_reversible_family(sizes, seed, index);
}

QutritBound qutrit_participation_bound(const DensityMatrix& rho, const SolverConfig& cfg) {
  if (rho.dim() != 3) throw Error(ErrorKind::WrongDimension, "participation bound is for qutrits");
  QutritBound out;
  out.cw = coherence_weight(rho, cfg).weight;
  out.r = 1.0 / purity(rho);
  out.consistent = !(out.cw >= 1.0 - 1e-6 && out.r > 2.0 + 1e-6);
  return out;
}

DensityMatrix random_rank2_qutrit(std::uint64_t seed, std::uint64_t index) {
  CounterRng rng = CounterRng::substream(seed, index);
  const ComplexMatrix v = haar_isometry(rng, 3, 2);
  double p = rng.uniform();
  while (p <= 0.01 || p >= 0.99) p = rng.uniform();
  const ComplexMatrix m = p * v.col(0) * v.col(0).adjoint() + (1.0 - p) * v.col(1) * v.col(1).adjoint();
  return DensityMatrix::from_trusted(m / m.trace().real());
}

DensityMatrix random_rank2_qutrit_sparse_kernel(std::uint64_t seed, std::uint64_t index, int zeros) {
  if (zeros < 1 || zeros > 2) throw Error(ErrorKind::BadParameters, "zeros must be 1 or 2");
  CounterRng rng = CounterRng::substream(seed, index);
  ComplexVector kernel = haar_vector(rng, 3);
  const auto skip = static_cast<int>(rng.next_u64() % 3);
  for (int z = 0; z < zeros; ++z) kernel((skip + z) % 3) = 0.0;
  kernel /= kernel.norm();

  // Orthonormal basis of the complement: project a Ginibre pair and orthonormalize.
  ComplexMatrix basis = ginibre(rng, 3, 2);
  for (int j = 0; j < 2; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      basis.col(j) -= kernel * kernel.dot(basis.col(j));
      for (int k = 0; k < j; ++k) basis.col(j) -= basis.col(k) * basis.col(k).dot(basis.col(j));
    }
    basis.col(j) /= basis.col(j).norm();
  }
  double p = rng.uniform();
  while (p <= 0.01 || p >= 0.99) p = rng.uniform();
  const ComplexMatrix m =
      p * basis.col(0) * basis.col(0).adjoint() + (1.0 - p) * basis.col(1) * basis.col(1).adjoint();
  return DensityMatrix::from_trusted(m / m.trace().real());
}

}  // namespace cohere
