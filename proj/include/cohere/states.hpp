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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "cohere/hermitian.hpp"

namespace cohere {

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kDefaultCoherenceRankTol = 1e-7;

/// Hermitian, unit-trace, PSD matrix written in the fixed incoherent
/// (computational) basis.
class DensityMatrix {
 public:
  /// Validates and symmetrizes `m`. Throws InvalidState on any violation.
  explicit DensityMatrix(const ComplexMatrix& m, double psd_tol = kNotPsdTol);

  /// For values assembled by the library itself from already-validated
  /// parts: hermitizes but does not check trace or spectrum.
  static DensityMatrix from_trusted(const ComplexMatrix& m);

  static DensityMatrix maximally_mixed(int dim);
  /// |psi><psi| / <psi|psi>. Throws ZeroVector.
  static DensityMatrix pure(const ComplexVector& psi);
  /// diag(p) / sum(p).
  static DensityMatrix diagonal(const RealVector& p);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  struct Trusted {};
  DensityMatrix(const ComplexMatrix& m, Trusted);

  ComplexMatrix m_;
};

struct StateDiagnostics {
  double purity = 0.0;
  double participation_ratio = 0.0;
  double mixedness = 0.0;  // 2(1 - Tr rho^2)
  double l1_coherence = 0.0;
  double min_eigenvalue = 0.0;
  double second_min_eigenvalue = 0.0;
  int min_eigvec_coherence_rank = 0;
};

double purity(const DensityMatrix& rho);
/// Sum of moduli of the off-diagonal entries.
double l1_coherence(const ComplexMatrix& m);
/// Frobenius norm of rho - Delta(rho).
double off_diagonal_norm(const ComplexMatrix& m);
/// Number of amplitudes of v / ||v|| whose modulus exceeds tol.
int coherence_rank(const ComplexVector& v, double tol = kDefaultCoherenceRankTol);

StateDiagnostics diagnostics(const DensityMatrix& rho, double coherence_rank_tol = kDefaultCoherenceRankTol);

enum class EnsembleKind { HaarPure, GinibreMixed, BlochBallUniform };

std::string_view to_string(EnsembleKind kind);
/// Accepts haar_pure, ginibre_mixed, bloch_ball_uniform. Throws BadParameters.
EnsembleKind parse_ensemble_kind(std::string_view name);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::GinibreMixed;
  int dim = 2;
  std::int64_t count = 1;
  std::uint64_t seed = 0;
};

/// State number `index` of the ensemble; depends only on (kind, dim, seed, index).
DensityMatrix sample_one(EnsembleKind kind, int dim, std::uint64_t seed, std::uint64_t index);

/// `count` states in index order. Throws UnsupportedDim for a Bloch-ball
/// ensemble outside dim 2 and BadParameters for non-positive dim or count.
std::vector<DensityMatrix> sample(const EnsembleSpec& spec);

struct DirectSumBlock {
  double weight;
  DensityMatrix state;
};

/// Blocks occupy consecutive index ranges in the order given.
struct DirectSumSpec {
  std::vector<DirectSumBlock> blocks;
};

/// Block-diagonal sum of p_j rho_j. Throws DimensionMismatch for weights
/// that are non-positive or do not sum to one.
DensityMatrix direct_sum(const DirectSumSpec& spec);

/// {"dim": d, "re": [[...]], "im": [[...]]}, row-major, doubles written with
/// round-trip precision.
std::string state_to_json(const DensityMatrix& rho);
/// Throws ParseError for malformed input and InvalidState for a matrix that
/// is not a density matrix.
DensityMatrix state_from_json(std::string_view text);

DensityMatrix read_state(const std::filesystem::path& path);
void write_state(const DensityMatrix& rho, const std::filesystem::path& path);

}  // namespace cohere
