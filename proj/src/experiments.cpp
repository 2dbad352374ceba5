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

#include "cohere/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "cohere/error.hpp"
#include "cohere/qubit_analytic.hpp"

namespace cohere {

ExperimentRecord make_record(const DensityMatrix& rho, std::int64_t index, const SolverConfig& cfg) {
  const StateDiagnostics diag = diagnostics(rho);
  const BfaDecomposition dec = coherence_weight(rho, cfg);
  ExperimentRecord rec;
  rec.dim = rho.dim();
  rec.state_index = index;
  rec.cw = dec.weight;
  rec.cl1 = diag.l1_coherence;
  rec.mixedness = diag.mixedness;
  rec.participation_ratio = diag.participation_ratio;
  rec.min_eigenvalue = diag.min_eigenvalue;
  rec.second_min_eigenvalue = diag.second_min_eigenvalue;
  rec.kernel_coherence_rank = diag.min_eigvec_coherence_rank;
  rec.gap = dec.gap;
  return rec;
}

void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  const auto workers = static_cast<std::int64_t>(std::clamp<std::int64_t>(threads, 1, count));
  if (workers == 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::int64_t w = 0; w < workers; ++w) {
    const std::int64_t begin = count * w / workers;
    const std::int64_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end] {
      try {
        for (std::int64_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<ExperimentRecord> run_ensemble(const EnsembleSpec& spec, const SolverConfig& cfg, int threads) {
  if (spec.count <= 0) throw Error(ErrorKind::BadParameters, "count must be positive");
  if (spec.kind == EnsembleKind::BlochBallUniform && spec.dim != 2) {
    throw Error(ErrorKind::UnsupportedDim, "bloch_ball_uniform needs dim 2");
  }
  std::vector<ExperimentRecord> out(static_cast<std::size_t>(spec.count));
  parallel_for(spec.count, threads, [&](std::int64_t i) {
    const DensityMatrix rho = sample_one(spec.kind, spec.dim, spec.seed, static_cast<std::uint64_t>(i));
    out[static_cast<std::size_t>(i)] = make_record(rho, i, cfg);
  });
  return out;
}

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string csv_row(const ExperimentRecord& rec) {
  std::string s;
  s += std::to_string(rec.dim) + ',' + std::to_string(rec.state_index) + ',';
  s += fmt17(rec.cw) + ',' + fmt17(rec.cl1) + ',' + fmt17(rec.mixedness) + ',';
  s += fmt17(rec.participation_ratio) + ',' + fmt17(rec.min_eigenvalue) + ',';
  s += fmt17(rec.second_min_eigenvalue) + ',' + std::to_string(rec.kernel_coherence_rank) + ',';
  s += fmt17(rec.gap) + '\n';
  return s;
}

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) out << csv_row(rec);
}

SampleSummary summarize(std::span<const ExperimentRecord> records) {
  SampleSummary s;
  s.count = static_cast<std::int64_t>(records.size());
  if (records.empty()) return s;
  double total = 0.0;
  s.argmax = records.front();
  for (const auto& rec : records) {
    total += rec.cw;
    s.max_gap = std::max(s.max_gap, rec.gap);
    if (rec.cw > s.argmax.cw) s.argmax = rec;
    if (rec.dim == 2) {
      if (std::abs(rec.cw - rec.cl1) <= kOnLineTol) ++s.on_line;
      else ++s.off_line;
    }
  }
  s.mean_cw = total / static_cast<double>(s.count);
  return s;
}

std::string summary_json(const SampleSummary& summary, const EnsembleSpec& spec) {
  const auto& a = summary.argmax;
  nlohmann::json doc;
  doc["ensemble"] = std::string(to_string(spec.kind));
  doc["dim"] = spec.dim;
  doc["count"] = summary.count;
  doc["seed"] = spec.seed;
  doc["mean_cw"] = summary.mean_cw;
  doc["max_gap"] = summary.max_gap;
  doc["argmax"] = {{"state_index", a.state_index},
                   {"cw", a.cw},
                   {"cl1", a.cl1},
                   {"mixedness", a.mixedness},
                   {"participation_ratio", a.participation_ratio},
                   {"min_eigenvalue", a.min_eigenvalue},
                   {"second_min_eigenvalue", a.second_min_eigenvalue},
                   {"kernel_coherence_rank", a.kernel_coherence_rank},
                   {"gap", a.gap}};
  if (spec.dim == 2) {
    doc["on_line"] = summary.on_line;
    doc["off_line"] = summary.off_line;
    doc["off_to_on_ratio"] =
        summary.on_line > 0 ? static_cast<double>(summary.off_line) / static_cast<double>(summary.on_line) : 0.0;
  }
  return doc.dump(2) + "\n";
}

}  // namespace cohere
