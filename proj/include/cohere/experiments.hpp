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

// Seeded ensemble runs and their CSV / JSON output.

#include <cstdint>
#include <exception>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cohere/states.hpp"
#include "cohere/weight_solver.hpp"

namespace cohere {

struct ExperimentRecord {
  int dim = 0;
  std::int64_t state_index = 0;
  double cw = 0.0;
  double cl1 = 0.0;
  double mixedness = 0.0;
  double participation_ratio = 0.0;
  double min_eigenvalue = 0.0;
  double second_min_eigenvalue = 0.0;
  int kernel_coherence_rank = 0;
  double gap = 0.0;
};

ExperimentRecord make_record(const DensityMatrix& rho, std::int64_t index, const SolverConfig& cfg = {});

/// Runs body(i) for i in [0, count) on `threads` workers, each owning a
/// contiguous index range. The first exception thrown by any worker is
/// rethrown after all workers join.
void parallel_for(std::int64_t count, int threads, const std::function<void(std::int64_t)>& body);

/// One record per sampled state, in index order. Output does not depend on
/// the thread count.
std::vector<ExperimentRecord> run_ensemble(const EnsembleSpec& spec, const SolverConfig& cfg = {}, int threads = 1);

inline constexpr const char* kCsvHeader =
    "dim,state_index,cw,cl1,mixedness,participation_ratio,min_eigenvalue,second_min_eigenvalue,"
    "kernel_coherence_rank,gap";

/// Doubles with 17 significant digits, LF line endings.
std::string csv_row(const ExperimentRecord& rec);
void write_csv(std::ostream& out, std::span<const ExperimentRecord> records);

struct SampleSummary {
  std::int64_t count = 0;
  ExperimentRecord argmax;  // largest cw, lowest index on ties
  double mean_cw = 0.0;
  double max_gap = 0.0;
  std::int64_t on_line = 0;   // qubits only: |cw - cl1| <= 1e-10
  std::int64_t off_line = 0;
};

SampleSummary summarize(std::span<const ExperimentRecord> records);
std::string summary_json(const SampleSummary& summary, const EnsembleSpec& spec);

}  // namespace cohere
