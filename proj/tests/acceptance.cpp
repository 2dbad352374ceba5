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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cohere/error.hpp"
#include "cohere/experiments.hpp"
#include "cohere/mmcs.hpp"
#include "cohere/qubit_analytic.hpp"
#include "cohere/random.hpp"
#include "cohere/states.hpp"
#include "cohere/weight_solver.hpp"
#include "oracles.hpp"

using namespace cohere;

namespace {

using Clock = std::chrono::steady_clock;

int worker_count() { return std::max(1, static_cast<int>(std::thread::hardware_concurrency())); }

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

/// Running record of every certificate produced during the run.
struct CertificateLedger {
  std::mutex mutex;
  std::int64_t solves = 0;
  std::int64_t failures = 0;
  double max_gap = 0.0;
  std::string first_failure;

  void record(double gap, const std::string& failure = {}) {
    std::lock_guard<std::mutex> lock(mutex);
    ++solves;
    if (!failure.empty()) {
      if (failures++ == 0) first_failure = failure;
    } else {
      max_gap = std::max(max_gap, gap);
    }
  }
};

CertificateLedger g_ledger;

/// Solves and independently re-verifies the primal/dual bracket.
WeightSolution certified_solve(const DensityMatrix& rho) {
  WeightSolution sol = solve_weight(rho);
  try {
    const double gap = verify_certificate(rho, sol.decomposition, sol.witness);
    const bool bracketed = gap >= -1e-8 && gap <= kCertifiedGap;
    g_ledger.record(gap, bracketed ? std::string{} : "gap " + fmt("%.3e", gap) + " outside [-1e-8, 1e-6]");
  } catch (const Error& e) {
    g_ledger.record(0.0, e.what());
  }
  return sol;
}

std::vector<DensityMatrix> ginibre(int dim, std::int64_t count, std::uint64_t seed) {
  return sample({EnsembleKind::GinibreMixed, dim, count, seed});
}

// Shared datasets ------------------------------------------------------------

const std::vector<DensityMatrix>& qubits_1e4() {
  static const std::vector<DensityMatrix> states = ginibre(2, 10000, 0xA11CE);
  return states;
}

struct TableRun {
  std::vector<std::vector<ExperimentRecord>> by_dim;  // d = 3..6
  double seconds = 0.0;
};

const TableRun& table_run() {
  static const TableRun run = [] {
    TableRun r;
    const auto t0 = Clock::now();
    for (int d = 3; d <= 6; ++d) {
      r.by_dim.push_back(run_ensemble({EnsembleKind::GinibreMixed, d, 100000, 0x7AB1E}, {}, worker_count()));
    }
    r.seconds = seconds_since(t0);
    return r;
  }();
  return run;
}

// Criteria -------------------------------------------------------------------

Outcome criterion1() {
  const auto& states = qubits_1e4();
  const auto t0 = Clock::now();
  std::vector<double> diff(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    diff[i] = std::abs(qubit_weight(states[i]) - certified_solve(states[i]).decomposition.weight);
  }
  const double secs = seconds_since(t0);
  const double worst = *std::max_element(diff.begin(), diff.end());
  return {worst <= 1e-6 && secs <= 60.0,
          "max |closed form - solver| = " + fmt("%.2e", worst) + " over 10^4 qubits in " + fmt("%.1f", secs) + " s"};
}

Outcome criterion2() {
  const auto& states = qubits_1e4();
  const ComplexVector e0 = ComplexVector::Unit(2, 0);
  const ComplexVector e1 = ComplexVector::Unit(2, 1);
  double worst = 0.0;
  std::int64_t not_maximal = 0;
  for (const auto& rho : states) {
    const PairMaximalResult r = pair_maximal(rho, e0, e1);
    worst = std::max(worst, std::abs(1.0 - (r.lambda1 + r.lambda2) - qubit_weight(rho)));
    if (!is_maximal_pair(rho.matrix(), e0, e1, r, 1e-6)) ++not_maximal;
  }
  return {worst <= 1e-9 && not_maximal == 0, "max |1 - (L1 + L2) - closed form| = " + fmt("%.2e", worst) +
                                                 ", epsilon-maximality failures " + std::to_string(not_maximal)};
}

Outcome criterion3() {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 100000; ++i) {
    worst = std::max(worst, mixedness_tradeoff(sample_one(EnsembleKind::GinibreMixed, 2, 0xC3, i)));
  }
  return {worst <= 1.0 + 1e-9, "max (cw^2 + M) = " + fmt("%.12f", worst) + " over 10^5 qubits"};
}

Outcome criterion4() {
  double worst = std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const L1Comparison c = l1_comparison(sample_one(EnsembleKind::GinibreMixed, 2, 0xC4, i));
    worst = std::min(worst, c.cw - c.cl1);
  }
  const VolumeCensus census = volume_ratio(100000, 0xB0B);
  const double cone = cone_volume_ratio();
  const bool pass = worst >= -1e-8 && census.ratio >= 0.95 && census.ratio <= 1.05 && cone == 1.0;
  return {pass, "min (cw - cl1) = " + fmt("%.2e", worst) + "; Bloch-ball census " + std::to_string(census.strict) +
                    ":" + std::to_string(census.equal) + " ratio " + fmt("%.4f", census.ratio) +
                    "; cone formula " + fmt("%.17g", cone)};
}

Outcome criterion5() {
  const auto t0 = Clock::now();
  double lowest = 1.0;
  double max_gap = 0.0;
  int solved = 0;
  for (int d = 3; d <= 6; ++d) {
    for (std::uint64_t i = 0; i < 100; ++i) {
      const DensityMatrix k = construct(random_kernel_family(d, 0x55, i), i);
      const DensityMatrix r = construct(random_reversible_family(d, 0x55, i));
      for (const auto* rho : {&k, &r}) {
        const WeightSolution sol = certified_solve(*rho);
        lowest = std::min(lowest, sol.decomposition.weight);
        max_gap = std::max(max_gap, sol.decomposition.gap);
        ++solved;
      }
    }
  }
  const double secs = seconds_since(t0);
  return {lowest >= 1.0 - 1e-6 && max_gap <= 1e-6 && secs <= 120.0,
          std::to_string(solved) + " constructed states: min cw = " + fmt("%.12f", lowest) + ", max gap " +
              fmt("%.2e", max_gap) + ", " + fmt("%.1f", secs) + " s"};
}

Outcome criterion6() {
  double worst = 0.0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    CounterRng rng = CounterRng::substream(0x66, trial);
    const int d = 2 + static_cast<int>(rng.next_u64() % 5);
    std::vector<int> sizes;
    for (int left = d; left > 0;) {
      const int s = 1 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(std::min(left, d - 1)));
      sizes.push_back(s);
      left -= s;
    }
    DirectSumSpec spec;
    std::vector<double> w;
    double total = 0.0;
    for (std::size_t j = 0; j < sizes.size(); ++j) total += w.emplace_back(-std::log(rng.uniform()));
    double expected = 0.0;
    for (std::size_t j = 0; j < sizes.size(); ++j) {
      const DensityMatrix block = sample_one(EnsembleKind::GinibreMixed, sizes[j], 0x660, trial * 8 + j);
      spec.blocks.push_back({w[j] / total, block});
      expected += (w[j] / total) * certified_solve(block).decomposition.weight;
    }
    const double got = certified_solve(direct_sum(spec)).decomposition.weight;
    worst = std::max(worst, std::abs(got - expected));
  }
  return {worst <= 1e-6, "max |cw(sum) - sum p cw| = " + fmt("%.2e", worst) + " over 100 block-diagonal states"};
}

Outcome criterion7() {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  std::int64_t interior = 0;
  double max_full_rank_cw = 0.0;
  for (int d = 2; d <= 6; ++d) {
    for (const auto& rho : ginibre(d, 1000, 0x77)) {
      const WeightSolution sol = certified_solve(rho);
      const BfaDecomposition& dec = sol.decomposition;
      max_full_rank_cw = std::max(max_full_rank_cw, dec.weight);
      if (dec.weight > 0.0 && dec.weight < 1.0) {
        const double m = boundary_diagnostics(rho, dec).rho_r_min_eig;
        lo = std::min(lo, m);
        hi = std::max(hi, m);
        ++interior;
      }
    }
  }
  std::int64_t table_states = 0;
  for (const auto& records : table_run().by_dim) {
    for (const auto& r : records) {
      max_full_rank_cw = std::max(max_full_rank_cw, r.cw);
      ++table_states;
    }
  }
  const bool pass = interior > 0 && lo >= -1e-8 && hi <= 1e-6 && max_full_rank_cw < 1.0 - 1e-9;
  return {pass, "rho_r min eigenvalue in [" + fmt("%.2e", lo) + ", " + fmt("%.2e", hi) + "] over " +
                    std::to_string(interior) + " states; max cw over " + std::to_string(5000 + table_states) +
                    " full-rank Ginibre states = " + fmt("%.10f", max_full_rank_cw)};
}

Outcome criterion8() {
  std::int64_t total = 0;
  std::int64_t mismatches = 0;
  std::int64_t mmcs = 0;
  double max_r_of_mmcs = 0.0;
  auto check = [&](const DensityMatrix& rho) {
    const MmcsVerdict v = classify(rho);
    const double w = certified_solve(rho).decomposition.weight;
    const bool weight_one = w >= 1.0 - 1e-6;
    if ((v.qutrit_classification == QutritClass::Mmcs) != weight_one) ++mismatches;
    if (weight_one) {
      ++mmcs;
      max_r_of_mmcs = std::max(max_r_of_mmcs, v.participation_ratio);
    }
    ++total;
  };
  for (std::uint64_t i = 0; i < 1000; ++i) check(random_rank2_qutrit(0x88, i));
  for (std::uint64_t i = 0; i < 500; ++i) check(random_rank2_qutrit_sparse_kernel(0x89, i, 1 + static_cast<int>(i % 2)));
  return {mismatches == 0 && max_r_of_mmcs <= 2.0 + 1e-6,
          std::to_string(total) + " rank-2 qutrits (" + std::to_string(mmcs) + " with cw = 1): " +
              std::to_string(mismatches) + " mismatches, max R among cw = 1 is " + fmt("%.6f", max_r_of_mmcs)};
}

Outcome criterion9() {
  double worst = -std::numeric_limits<double>::infinity();
  for (int d = 2; d <= 6; ++d) {
    for (const auto& rho : ginibre(d, 1000, 0x99)) {
      const double lhs = l1_coherence(rho.matrix()) / (d - 1);
      worst = std::max(worst, lhs - certified_solve(rho).decomposition.weight);
    }
  }
  return {worst <= 1e-8, "max (cl1/(d-1) - cw) = " + fmt("%.3e", worst) + " over 5000 states"};
}

Outcome criterion10() {
  // Faithfulness population: diagonal part bounded away from zero and
  // off-diagonal Frobenius mass either below 1e-8 or above 1e-4.
  std::int64_t faithful_failures = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    CounterRng rng = CounterRng::substream(0x1010, i);
    const int d = 2 + static_cast<int>(i % 5);
    RealVector p(d);
    for (int k = 0; k < d; ++k) p(k) = 0.2 + rng.uniform();
    p /= p.sum();
    ComplexMatrix off = cohere::ginibre(rng, d, d);
    off = 0.5 * (off + off.adjoint()).eval();
    off.diagonal().setZero();
    const bool small = i % 2 == 0;
    const double scale = small ? std::pow(10.0, -12.0 + 4.0 * rng.uniform()) : std::pow(10.0, -4.0 + 3.0 * rng.uniform());
    off *= scale / off.norm();
    const DensityMatrix rho(ComplexMatrix(p.cast<Complex>().asDiagonal()) + off);
    const double w = certified_solve(rho).decomposition.weight;
    if ((w <= 1e-6) != (off_diagonal_norm(rho.matrix()) <= 1e-6)) ++faithful_failures;
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const int d = 2 + static_cast<int>(i % 5);
    const EnsembleKind k1 = i % 4 == 0 ? EnsembleKind::HaarPure : EnsembleKind::GinibreMixed;
    const DensityMatrix a = sample_one(k1, d, 0x1011, i);
    const DensityMatrix b = sample_one(EnsembleKind::GinibreMixed, d, 0x1012, i);
    CounterRng rng = CounterRng::substream(0x1013, i);
    const double p = rng.uniform();
    const DensityMatrix mix(p * a.matrix() + (1.0 - p) * b.matrix());
    const double lhs = certified_solve(mix).decomposition.weight;
    const double rhs = p * certified_solve(a).decomposition.weight + (1.0 - p) * certified_solve(b).decomposition.weight;
    worst = std::max(worst, lhs - rhs);
  }
  return {faithful_failures == 0 && worst <= 1e-6, "faithfulness failures " + std::to_string(faithful_failures) +
                                                       " of 1000; max convexity violation " + fmt("%.2e", worst) +
                                                       " over 1000 mixtures"};
}

Outcome criterion11() {
  const TableRun& run = table_run();
  bool pass = run.seconds <= 1800.0;
  std::string detail;
  std::int64_t over_gap = 0;
  for (std::size_t k = 0; k < run.by_dim.size(); ++k) {
    const int d = 3 + static_cast<int>(k);
    const auto& records = run.by_dim[k];
    const SampleSummary s = summarize(records);
    double min_lambda = std::numeric_limits<double>::infinity();
    for (const auto& r : records) {
      min_lambda = std::min(min_lambda, r.min_eigenvalue);
      if (r.gap > kCertifiedGap) ++over_gap;
    }
    const auto& a = s.argmax;
    pass = pass && a.kernel_coherence_rank == d && a.cw >= 0.99;
    detail += "d=" + std::to_string(d) + ": max cw " + fmt("%.6f", a.cw) + " R " + fmt("%.4f", a.participation_ratio) +
              " l_sec " + fmt("%.4g", a.second_min_eigenvalue) + " l_min " + fmt("%.3g", a.min_eigenvalue) + " r_c " +
              std::to_string(a.kernel_coherence_rank) +
              (a.min_eigenvalue == min_lambda ? " (smallest l_min)" : " (l_min not the sample minimum)") + "; ";
    if (d == 3) {
      std::int64_t violators = 0;
      for (const auto& r : records) {
        if (r.participation_ratio > 2.05 && r.cw >= 0.999) ++violators;
      }
      pass = pass && violators == 0;
      detail += "qutrits with R > 2.05 and cw >= 0.999: " + std::to_string(violators) + "; ";
    }
  }
  pass = pass && over_gap == 0;
  detail += "records over gap 1e-6: " + std::to_string(over_gap) + "; " + fmt("%.0f", run.seconds) + " s";
  return {pass, detail};
}

Outcome criterion12() {
  // Brute-force oracle on 100 random states with d <= 3, a quarter of them rank deficient.
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const int d = 2 + static_cast<int>(i % 2);
    CounterRng rng = CounterRng::substream(0x1212, i);
    const int rank = i % 4 == 3 ? d - 1 : d;
    const ComplexMatrix g = cohere::ginibre(rng, d, rank);
    const ComplexMatrix m = g * g.adjoint();
    const DensityMatrix rho(m / m.trace().real());
    const double w = certified_solve(rho).decomposition.weight;
    worst = std::max(worst, std::abs(w - oracle::brute_force_weight(rho.matrix(), i)));
  }
  std::int64_t table_over = 0;
  std::int64_t table_count = 0;
  for (const auto& records : table_run().by_dim) {
    for (const auto& r : records) {
      ++table_count;
      if (!(r.gap >= 0.0 && r.gap <= kCertifiedGap)) ++table_over;
    }
  }
  const bool pass = worst <= 1e-3 && g_ledger.failures == 0 && g_ledger.max_gap <= kCertifiedGap && table_over == 0;
  std::string detail = std::to_string(g_ledger.solves) + " re-verified certificates, max gap " +
                       fmt("%.2e", g_ledger.max_gap) + ", " + std::to_string(g_ledger.failures) + " failures";
  if (g_ledger.failures > 0) detail += " (first: " + g_ledger.first_failure + ")";
  detail += "; " + std::to_string(table_count - table_over) + "/" + std::to_string(table_count) +
            " ensemble records within gap; oracle max |diff| = " + fmt("%.2e", worst) + " over 100 states";
  return {pass, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"qubit closed form vs solver", criterion1},
      {"pair-maximal rule vs closed form", criterion2},
      {"coherence-mixedness trade-off", criterion3},
      {"weight dominates l1 coherence; volume ratio", criterion4},
      {"constructed MMCS families", criterion5},
      {"additivity on direct sums", criterion6},
      {"boundary remainder; full rank below one", criterion7},
      {"qutrit MMCS classification", criterion8},
      {"normalized l1 bound", criterion9},
      {"faithfulness and convexity", criterion10},
      {"largest-weight states per dimension", criterion11},
      {"solver self-certification and oracle", criterion12},
  };
  int passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (o.pass) ++passed;
    std::printf("%s criterion %2zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, criteria.size());
  return passed == static_cast<int>(criteria.size()) ? 0 : 1;
}
