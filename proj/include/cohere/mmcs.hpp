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

// Mixed maximally coherent states (C_w = 1): detection from the kernel of
// rho, and two constructive families.

#include <cstdint>
#include <string_view>
#include <variant>
#include <vector>

#include "cohere/hermitian.hpp"
#include "cohere/states.hpp"
#include "cohere/weight_solver.hpp"

namespace cohere {

enum class QutritClass { NotApplicable, Mmcs, NotMmcs };
std::string_view to_string(QutritClass c);

struct MmcsVerdict {
  bool is_rank_deficient = false;
  std::vector<ComplexVector> kernel_vectors;
  /// Largest coherence rank reachable by a vector in the kernel: the number of
  /// basis states with nonzero overlap with the kernel.
  int max_kernel_coherence_rank = 0;
  bool theorem2_applies = false;  // some kernel vector has full coherence rank
  QutritClass qutrit_classification = QutritClass::NotApplicable;
  double participation_ratio = 0.0;
};

/// For dim 3 and rank exactly 2 the verdict is the iff characterization
/// (mmcs exactly when the kernel vector has full coherence rank); full-rank
/// qutrits are not_mmcs; everything else is not_applicable.
MmcsVerdict classify(const DensityMatrix& rho, double rank_tol = kDefaultRankTol,
                     double coherence_rank_tol = kDefaultCoherenceRankTol);

/// rho = (1 - mix) (1 - |psi><psi|)/(d - 1) + mix * Q G G^dagger Q / Tr, with
/// Q the projector orthogonal to psi and G a seeded Ginibre matrix.
struct KernelFamily {
  ComplexVector kernel;
  double mix = 0.0;
};

/// Direct sum of pure blocks, each with coherence rank >= 2.
struct ReversibleBlock {
  double weight;
  ComplexVector state;
};

struct ReversibleFamily {
  std::vector<ReversibleBlock> blocks;
};

using MmcsConstructionSpec = std::variant<KernelFamily, ReversibleFamily>;

/// Throws BadParameters when the family parameters are malformed.
DensityMatrix construct(const MmcsConstructionSpec& spec, std::uint64_t seed = 0);

/// Random members of each family for experiments and tests.
KernelFamily random_kernel_family(int dim, std::uint64_t seed, std::uint64_t index);
/// Block sizes are drawn as a random composition of dim into parts >= 2.
ReversibleFamily random_reversible_family(int dim, std::uint64_t seed, std::uint64_t index);
ReversibleFamily random_reversible_family(const std::vector<int>& block_sizes, std::uint64_t seed,
                                          std::uint64_t index);

struct QutritBound {
  double cw = 0.0;
  double r = 0.0;
  bool consistent = true;  // not (cw >= 1 - 1e-6 and r > 2 + 1e-6)
};

/// Throws WrongDimension for dim != 3.
QutritBound qutrit_participation_bound(const DensityMatrix& rho, const SolverConfig& cfg = {});

/// Random rank-2 qutrit: Haar 3x2 isometry for the eigenvectors and weights
/// uniform on the simplex with both above 0.01.
DensityMatrix random_rank2_qutrit(std::uint64_t seed, std::uint64_t index);

/// Random rank-2 qutrit whose kernel vector has exactly `zeros` (1 or 2)
/// vanishing amplitudes, so the kernel lacks full coherence rank.
DensityMatrix random_rank2_qutrit_sparse_kernel(std::uint64_t seed, std::uint64_t index, int zeros);

}  // namespace cohere
