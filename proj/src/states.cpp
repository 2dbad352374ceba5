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

#include "cohere/states.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cohere/error.hpp"
#include "cohere/random.hpp"

namespace cohere {

DensityMatrix::DensityMatrix(const ComplexMatrix& m, double psd_tol) {
  try {
    m_ = hermitize(m);
  } catch (const Error& e) {
    throw Error(ErrorKind::InvalidState, e.what());
  }
  const double trace = m_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    std::ostringstream os;
    os << "trace " << trace << " differs from 1";
    throw Error(ErrorKind::InvalidState, os.str());
  }
  const double lowest = min_eigenvalue(m_);
  if (lowest < -psd_tol) {
    std::ostringstream os;
    os << "min eigenvalue " << lowest << " is negative";
    throw Error(ErrorKind::InvalidState, os.str());
  }
}

DensityMatrix::DensityMatrix(const ComplexMatrix& m, Trusted) : m_(0.5 * (m + m.adjoint())) {}

DensityMatrix DensityMatrix::from_trusted(const ComplexMatrix& m) { return DensityMatrix(m, Trusted{}); }

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw Error(ErrorKind::DimensionZero, "dim must be positive");
  return from_trusted(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "pure state from zero vector");
  const ComplexVector u = psi / norm;
  return from_trusted(u * u.adjoint());
}

DensityMatrix DensityMatrix::diagonal(const RealVector& p) {
  if (p.size() == 0) throw Error(ErrorKind::DimensionZero, "empty diagonal");
  if ((p.array() < 0.0).any() || p.sum() <= 0.0) throw Error(ErrorKind::InvalidState, "diagonal must be nonnegative");
  return from_trusted((p / p.sum()).cast<Complex>().asDiagonal());
}

double purity(const DensityMatrix& rho) { return rho.matrix().squaredNorm(); }

double l1_coherence(const ComplexMatrix& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) s += std::abs(m(i, j));
    }
  }
  return s;
}

double off_diagonal_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (i != j) s += std::norm(m(i, j));
    }
  }
  return std::sqrt(s);
}

int coherence_rank(const ComplexVector& v, double tol) {
  const double norm = v.norm();
  if (norm == 0.0) throw Error(ErrorKind::ZeroVector, "coherence rank of zero vector");
  int rank = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) / norm > tol) ++rank;
  }
  return rank;
}

StateDiagnostics diagnostics(const DensityMatrix& rho, double coherence_rank_tol) {
  const HermitianEig eig = eig_hermitian(rho.matrix());
  StateDiagnostics out;
  out.purity = purity(rho);
  out.participation_ratio = 1.0 / out.purity;
  out.mixedness = 2.0 * (1.0 - out.purity);
  out.l1_coherence = l1_coherence(rho.matrix());
  out.min_eigenvalue = eig.eigenvalues(0);
  out.second_min_eigenvalue = eig.dim() > 1 ? eig.eigenvalues(1) : eig.eigenvalues(0);
  out.min_eigvec_coherence_rank = coherence_rank(eig.eigenvectors.col(0), coherence_rank_tol);
  return out;
}

std::string_view to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::HaarPure: return "haar_pure";
    case EnsembleKind::GinibreMixed: return "ginibre_mixed";
    case EnsembleKind::BlochBallUniform: return "bloch_ball_uniform";
  }
  return "unknown";
}

EnsembleKind parse_ensemble_kind(std::string_view name) {
  if (name == "haar_pure") return EnsembleKind::HaarPure;
  if (name == "ginibre_mixed") return EnsembleKind::GinibreMixed;
  if (name == "bloch_ball_uniform") return EnsembleKind::BlochBallUniform;
  throw Error(ErrorKind::BadParameters, "unknown ensemble '" + std::string(name) + "'");
}

DensityMatrix sample_one(EnsembleKind kind, int dim, std::uint64_t seed, std::uint64_t index) {
  if (dim <= 0) throw Error(ErrorKind::BadParameters, "dim must be positive");
  CounterRng rng = CounterRng::substream(seed, index);
  switch (kind) {
    case EnsembleKind::HaarPure:
      return DensityMatrix::pure(haar_vector(rng, dim));
    case EnsembleKind::GinibreMixed: {
      const ComplexMatrix g = ginibre(rng, dim, dim);
      const ComplexMatrix w = g * g.adjoint();
      return DensityMatrix::from_trusted(w / w.trace().real());
    }
    case EnsembleKind::BlochBallUniform: {
      if (dim != 2) throw Error(ErrorKind::UnsupportedDim, "bloch_ball_uniform needs dim 2");
      double x = rng.normal();
      double y = rng.normal();
      double z = rng.normal();
      const double len = std::sqrt(x * x + y * y + z * z);
      const double radius = std::cbrt(rng.uniform());
      x *= radius / len;
      y *= radius / len;
      z *= radius / len;
      ComplexMatrix m(2, 2);
      m << Complex(0.5 * (1.0 + z), 0.0), Complex(0.5 * x, -0.5 * y),
           Complex(0.5 * x, 0.5 * y), Complex(0.5 * (1.0 - z), 0.0);
      return DensityMatrix::from_trusted(m);
    }
  }
  throw Error(ErrorKind::BadParameters, "unknown ensemble");
}

std::vector<DensityMatrix> sample(const EnsembleSpec& spec) {
  if (spec.count <= 0) throw Error(ErrorKind::BadParameters, "count must be positive");
  if (spec.kind == EnsembleKind::BlochBallUniform && spec.dim != 2) {
    throw Error(ErrorKind::UnsupportedDim, "bloch_ball_uniform needs dim 2");
  }
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (std::int64_t i = 0; i < spec.count; ++i) {
    out.push_back(sample_one(spec.kind, spec.dim, spec.seed, static_cast<std::uint64_t>(i)));
  }
  return out;
}

DensityMatrix direct_sum(const DirectSumSpec& spec) {
  if (spec.blocks.empty()) throw Error(ErrorKind::DimensionMismatch, "direct sum of no blocks");
  int dim = 0;
  double total = 0.0;
  for (const auto& b : spec.blocks) {
    if (!(b.weight > 0.0)) throw Error(ErrorKind::DimensionMismatch, "block weights must be positive");
    dim += b.state.dim();
    total += b.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorKind::DimensionMismatch, "block weights must sum to 1");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  int offset = 0;
  for (const auto& b : spec.blocks) {
    const int n = b.state.dim();
    m.block(offset, offset, n, n) = b.weight * b.state.matrix();
    offset += n;
  }
  return DensityMatrix::from_trusted(m);
}

std::string state_to_json(const DensityMatrix& rho) {
  const int d = rho.dim();
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (int i = 0; i < d; ++i) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (int j = 0; j < d; ++j) {
      re_row.push_back(rho(i, j).real());
      im_row.push_back(rho(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json doc;
  doc["dim"] = d;
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump() + "\n";
}

namespace {

double read_number(const nlohmann::json& v) {
  if (!v.is_number()) throw Error(ErrorKind::ParseError, "matrix entries must be numbers");
  return v.get<double>();
}

void check_square(const nlohmann::json& rows, int d, const char* name) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw Error(ErrorKind::ParseError, std::string("'") + name + "' must be an array of dim rows");
  }
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw Error(ErrorKind::ParseError, std::string("rows of '") + name + "' must have dim entries");
    }
  }
}

}  // namespace

DensityMatrix state_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re") || !doc.contains("im")) {
    throw Error(ErrorKind::ParseError, "expected an object with dim, re and im");
  }
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long long>() <= 0) {
    throw Error(ErrorKind::ParseError, "dim must be a positive integer");
  }
  const int d = static_cast<int>(doc["dim"].get<long long>());
  check_square(doc["re"], d, "re");
  check_square(doc["im"], d, "im");
  ComplexMatrix m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      m(i, j) = Complex(read_number(doc["re"][i][j]), read_number(doc["im"][i][j]));
    }
  }
  return DensityMatrix(m);
}

DensityMatrix read_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return state_from_json(buf.str());
}

void write_state(const DensityMatrix& rho, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << state_to_json(rho);
  if (!out) throw Error(ErrorKind::ParseError, "write failed for " + path.string());
}

}  // namespace cohere
