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


#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cohere/error.hpp"
#include "cohere/experiments.hpp"
#include "cohere/mmcs.hpp"
#include "cohere/qubit_analytic.hpp"
#include "cohere/states.hpp"
#include "cohere/weight_solver.hpp"

namespace cohere::cli {

namespace {

using nlohmann::json;

constexpr double kMmcsThreshold = 1.0 - 1e-6;

struct GlobalOptions {
  double tol = kDefaultRankTol;
  std::uint64_t seed = 0;
  std::string out;
  std::string json;
  int threads = 1;

  SolverConfig solver() const {
    SolverConfig cfg;
    cfg.rank_tol = tol;
    return cfg;
  }
};

/// Input problems detected by the front end itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A result that failed its own post-condition check.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x + 0.0);  // prints -0 as 0
  return buf;
}

/// Writes `content` to a sibling temporary file and renames it over `path`,
/// so a failed run never leaves a truncated file behind.
void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".partial";
  try {
    {
      std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
      if (!f) throw UsageError("cannot write " + path.string());
      f << content;
      f.flush();
      if (!f) throw UsageError("write failed for " + path.string());
    }
    std::filesystem::rename(tmp, path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

/// "-" selects `out`; an empty target drops the document.
void emit_json(const std::string& target, const json& doc, std::ostream& out) {
  if (target.empty()) return;
  const std::string text = doc.dump(2) + "\n";
  if (target == "-") out << text;
  else write_atomic(target, text);
}

json lambda_json(const RealVector& lambda) {
  json arr = json::array();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) arr.push_back(lambda(i));
  return arr;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw UsageError("bad integer '" + item + "'");
      values.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad integer '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError("empty list");
  return values;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw UsageError("bad number '" + item + "'");
      values.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad number '" + item + "'");
    }
  }
  if (values.empty()) throw UsageError("empty list");
  return values;
}

// weight ---------------------------------------------------------------------

struct WeightArgs {
  std::string state_path;
};

int cmd_weight(const WeightArgs& args, const GlobalOptions& g, std::ostream& out) {
  const DensityMatrix rho = read_state(args.state_path);
  const WeightSolution sol = solve_weight(rho, g.solver());
  const BfaDecomposition& dec = sol.decomposition;
  const double gap = verify_certificate(rho, dec, sol.witness);

  out << "dim: " << rho.dim() << "\n";
  out << "cw: " << num(dec.weight) << "\n";
  out << "lambda:";
  for (Eigen::Index i = 0; i < dec.lambda.size(); ++i) out << ' ' << num(dec.lambda(i));
  out << "\n";
  out << "dual_bound: " << num(sol.witness.bound) << "\n";
  out << "gap: " << num(gap) << "\n";
  out << "newton_iterations: " << sol.state.newton_iterations << "\n";

  json doc;
  doc["dim"] = rho.dim();
  doc["cw"] = dec.weight;
  doc["lambda"] = lambda_json(dec.lambda);
  doc["dual_bound"] = sol.witness.bound;
  doc["gap"] = gap;
  if (dec.rho_f && dec.rho_r) {
    const BoundaryDiagnostics b = boundary_diagnostics(rho, dec);
    out << "rho_r_min_eig: " << num(b.rho_r_min_eig) << "\n";
    out << "rho_f_min_diag: " << num(b.rho_f_min_diag) << "\n";
    out << "collinearity_residual: " << num(b.collinearity_residual) << "\n";
    doc["boundary"] = {{"rho_r_min_eig", b.rho_r_min_eig},
                       {"rho_f_min_diag", b.rho_f_min_diag},
                       {"collinearity_residual", b.collinearity_residual}};
  } else {
    out << "boundary: " << (dec.rho_f ? "rho_r absent (cw = 0)" : "rho_f absent (cw = 1)") << "\n";
    doc["boundary"] = nullptr;
  }
  emit_json(g.json, doc, out);
  return kExitOk;
}

// qubit ----------------------------------------------------------------------

struct QubitArgs {
  std::optional<double> rho00;
  std::optional<double> rho11;
  double re01 = 0.0;
  double im01 = 0.0;
  std::vector<double> bloch;
  bool any_entry_flag = false;
};

DensityMatrix qubit_from_args(const QubitArgs& a) {
  if (!a.bloch.empty()) {
    if (a.any_entry_flag) throw UsageError("use either --bloch or the --rho entry flags, not both");
    return bloch_to_state({a.bloch[0], a.bloch[1], a.bloch[2]});
  }
  if (!a.rho00 && !a.rho11) throw UsageError("qubit needs --bloch or at least one of --rho00 / --rho11");
  const double p00 = a.rho00 ? *a.rho00 : 1.0 - *a.rho11;
  const double p11 = a.rho11 ? *a.rho11 : 1.0 - p00;
  ComplexMatrix m(2, 2);
  m << p00, Complex(a.re01, a.im01), Complex(a.re01, -a.im01), p11;
  return DensityMatrix(m);
}

int cmd_qubit(const QubitArgs& args, const GlobalOptions& g, std::ostream& out) {
  const DensityMatrix rho = qubit_from_args(args);
  const double p00 = rho(0, 0).real();
  const double p11 = rho(1, 1).real();
  const double off = std::abs(rho(0, 1));
  const double det = p00 * p11 - off * off;
  const QubitBranch branch = qubit_branch(rho);
  const double cw = qubit_weight(rho);
  const StateDiagnostics diag = diagnostics(rho);
  const BfaDecomposition dec = coherence_weight(rho, g.solver());
  const double delta = std::abs(dec.weight - cw);
  const BlochVector u = state_to_bloch(rho);

  out << "rho00: " << num(p00) << "\n";
  out << "rho11: " << num(p11) << "\n";
  out << "abs_rho01: " << num(off) << "\n";
  out << "det: " << num(det) << "\n";
  out << "min_diag: " << num(std::min(p00, p11)) << "\n";
  out << "bloch: " << num(u.u1) << ' ' << num(u.u2) << ' ' << num(u.u3) << "\n";
  out << "branch: " << (branch == QubitBranch::OffDiagonal ? 1 : 2) << "\n";
  out << "cw: " << num(cw) << "\n";
  out << "cl1: " << num(diag.l1_coherence) << "\n";
  out << "mixedness: " << num(diag.mixedness) << "\n";
  out << "sdp_cw: " << num(dec.weight) << "\n";
  out << "sdp_delta: " << num(delta) << "\n";

  json doc = {{"rho00", p00},        {"rho11", p11},
              {"abs_rho01", off},    {"det", det},
              {"branch", branch == QubitBranch::OffDiagonal ? 1 : 2},
              {"cw", cw},            {"cl1", diag.l1_coherence},
              {"mixedness", diag.mixedness},
              {"sdp_cw", dec.weight}, {"sdp_delta", delta}};
  emit_json(g.json, doc, out);
  if (delta > kCertifiedGap) throw VerificationError("closed form and solver disagree by " + num(delta));
  return kExitOk;
}

// sample ---------------------------------------------------------------------

struct SampleArgs {
  int dim = 2;
  std::int64_t count = 0;
  std::string ensemble = "ginibre_mixed";
};

void check_record(const ExperimentRecord& r) {
  const double values[] = {r.cw, r.cl1, r.mixedness, r.participation_ratio, r.min_eigenvalue,
                           r.second_min_eigenvalue, r.gap};
  for (const double v : values) {
    if (!std::isfinite(v)) throw VerificationError("non-finite value in row " + std::to_string(r.state_index));
  }
  const double slack = 1e-9;
  if (r.cw < -slack || r.cw > 1.0 + slack || r.gap > kCertifiedGap || r.participation_ratio < 1.0 - slack ||
      r.participation_ratio > r.dim + slack) {
    throw VerificationError("row " + std::to_string(r.state_index) + " violates a record invariant");
  }
}

int cmd_sample(const SampleArgs& args, const GlobalOptions& g, std::ostream& out) {
  if (args.dim < 1) throw UsageError("--dim must be positive");
  if (args.count < 1) throw UsageError("--count must be positive");
  if (g.threads < 1) throw UsageError("--threads must be positive");
  EnsembleSpec spec;
  spec.kind = parse_ensemble_kind(args.ensemble);
  spec.dim = args.dim;
  spec.count = args.count;
  spec.seed = g.seed;

  const std::vector<ExperimentRecord> records = run_ensemble(spec, g.solver(), g.threads);
  for (const auto& r : records) check_record(r);

  std::ostringstream csv;
  write_csv(csv, records);
  const std::string summary = summary_json(summarize(records), spec);
  if (g.out.empty()) {
    out << csv.str();
  } else {
    write_atomic(g.out, csv.str());
    if (g.json.empty()) out << summary;
  }
  if (!g.json.empty()) {
    if (g.json == "-") out << summary;
    else write_atomic(g.json, summary);
  }
  return kExitOk;
}

// volume-ratio ---------------------------------------------------------------

struct VolumeArgs {
  std::int64_t count = 0;
};

int cmd_volume_ratio(const VolumeArgs& args, const GlobalOptions& g, std::ostream& out) {
  if (args.count < 1) throw UsageError("--count must be at least 1");
  const VolumeCensus c = volume_ratio(args.count, g.seed);
  const double analytic = cone_volume_ratio();
  out << "count: " << args.count << "\n";
  out << "strict: " << c.strict << "\n";
  out << "equal: " << c.equal << "\n";
  out << "ratio: " << num(c.ratio) << "\n";
  out << "analytic_ratio: " << num(analytic) << "\n";
  emit_json(g.json, {{"count", args.count}, {"strict", c.strict}, {"equal", c.equal},
                     {"ratio", c.ratio}, {"analytic_ratio", analytic}},
            out);
  return kExitOk;
}

// mmcs -----------------------------------------------------------------------

struct MmcsCheckArgs {
  std::string state_path;
};

int cmd_mmcs_check(const MmcsCheckArgs& args, const GlobalOptions& g, std::ostream& out) {
  const DensityMatrix rho = read_state(args.state_path);
  const MmcsVerdict v = classify(rho, g.tol);
  const BfaDecomposition dec = coherence_weight(rho, g.solver());
  const bool weight_one = dec.weight >= kMmcsThreshold;

  out << "dim: " << rho.dim() << "\n";
  out << "rank_deficient: " << (v.is_rank_deficient ? "true" : "false") << "\n";
  out << "kernel_dimension: " << v.kernel_vectors.size() << "\n";
  out << "max_kernel_coherence_rank: " << v.max_kernel_coherence_rank << "\n";
  out << "theorem2_applies: " << (v.theorem2_applies ? "true" : "false") << "\n";
  out << "qutrit_classification: " << to_string(v.qutrit_classification) << "\n";
  out << "participation_ratio: " << num(v.participation_ratio) << "\n";
  out << "cw: " << num(dec.weight) << "\n";
  out << "gap: " << num(dec.gap) << "\n";
  out << "weight_is_one: " << (weight_one ? "true" : "false") << "\n";

  emit_json(g.json,
            {{"dim", rho.dim()},
             {"rank_deficient", v.is_rank_deficient},
             {"kernel_dimension", v.kernel_vectors.size()},
             {"max_kernel_coherence_rank", v.max_kernel_coherence_rank},
             {"theorem2_applies", v.theorem2_applies},
             {"qutrit_classification", std::string(to_string(v.qutrit_classification))},
             {"participation_ratio", v.participation_ratio},
             {"cw", dec.weight},
             {"gap", dec.gap},
             {"weight_is_one", weight_one}},
            out);
  return kExitOk;
}

struct MmcsConstructArgs {
  std::string family;
  int dim = 0;
  std::string kernel;
  double mix = 0.5;
  std::string blocks;
};

MmcsConstructionSpec construction_spec(const MmcsConstructArgs& a, const GlobalOptions& g) {
  if (a.family == "theorem2") {
    KernelFamily fam;
    fam.mix = a.mix;
    if (!a.kernel.empty()) {
      const std::vector<double> amp = parse_double_list(a.kernel);
      if (a.dim != 0 && static_cast<int>(amp.size()) != a.dim) throw UsageError("--kernel length differs from --dim");
      fam.kernel = Eigen::Map<const RealVector>(amp.data(), static_cast<Eigen::Index>(amp.size())).cast<Complex>();
      const double n = fam.kernel.norm();
      if (n == 0.0) throw UsageError("--kernel must be nonzero");
      fam.kernel /= n;
    } else {
      if (a.dim < 2) throw UsageError("theorem2 family needs --dim >= 2 or --kernel");
      fam.kernel = ComplexVector::Constant(a.dim, 1.0 / std::sqrt(static_cast<double>(a.dim)));
    }
    return fam;
  }
  if (a.family == "reversible") {
    if (!a.blocks.empty()) {
      const std::vector<int> sizes = parse_int_list(a.blocks);
      int total = 0;
      for (const int s : sizes) total += s;
      if (a.dim != 0 && total != a.dim) throw UsageError("--blocks do not sum to --dim");
      return random_reversible_family(sizes, g.seed, 0);
    }
    if (a.dim < 2) throw UsageError("reversible family needs --dim >= 2 or --blocks");
    return random_reversible_family(a.dim, g.seed, 0);
  }
  throw UsageError("--family must be theorem2 or reversible");
}

int cmd_mmcs_construct(const MmcsConstructArgs& args, const GlobalOptions& g, std::ostream& out) {
  const DensityMatrix rho = construct(construction_spec(args, g), g.seed);
  const WeightSolution sol = solve_weight(rho, g.solver());
  const double w = sol.decomposition.weight;
  const double gap = sol.decomposition.gap;
  if (!(w >= kMmcsThreshold) || !(gap <= kCertifiedGap)) {
    throw VerificationError("constructed state has cw " + num(w) + " with gap " + num(gap));
  }
  const std::string text = state_to_json(rho);
  if (g.out.empty()) {
    out << text;
  } else {
    write_atomic(g.out, text);
    out << "dim: " << rho.dim() << "\n";
    out << "cw: " << num(w) << "\n";
    out << "gap: " << num(gap) << "\n";
    out << "written: " << g.out << "\n";
  }
  emit_json(g.json, {{"dim", rho.dim()}, {"cw", w}, {"gap", gap}, {"family", args.family}}, out);
  return kExitOk;
}

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::SolverStall: return kExitStall;
    case ErrorKind::InfeasibleWitness:
    case ErrorKind::PrimalInfeasible:
    case ErrorKind::DualInfeasible: return kExitVerification;
    default: return kExitInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coherence weight toolkit", "cohere"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--tol", g.tol, "Relative rank tolerance for range and kernel decisions")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every random choice");
  app.add_option("--out", g.out, "Output file (written atomically)");
  app.add_option("--json", g.json, "Write a JSON report to this file, or '-' for stdout");
  app.add_option("--threads", g.threads, "Worker threads for sampling");

  WeightArgs weight_args;
  CLI::App* weight = app.add_subcommand("weight", "Coherence weight of a state file");
  weight->add_option("state", weight_args.state_path, "State JSON file")->required();

  QubitArgs qubit_args;
  CLI::App* qubit = app.add_subcommand("qubit", "Closed-form qubit weight with a solver cross-check");
  auto* o00 = qubit->add_option("--rho00", qubit_args.rho00, "Population of |0>");
  auto* o11 = qubit->add_option("--rho11", qubit_args.rho11, "Population of |1>");
  auto* ore = qubit->add_option("--re01", qubit_args.re01, "Real part of rho_01");
  auto* oim = qubit->add_option("--im01", qubit_args.im01, "Imaginary part of rho_01");
  qubit->add_option("--bloch", qubit_args.bloch, "Bloch vector u1 u2 u3")->expected(3);

  SampleArgs sample_args;
  CLI::App* sample_cmd = app.add_subcommand("sample", "Seeded ensemble experiment, one CSV row per state");
  sample_cmd->add_option("--dim", sample_args.dim, "Hilbert-space dimension")->required();
  sample_cmd->add_option("--count", sample_args.count, "Number of states")->required();
  sample_cmd->add_option("--ensemble", sample_args.ensemble, "haar_pure, ginibre_mixed or bloch_ball_uniform");

  VolumeArgs volume_args;
  CLI::App* volume = app.add_subcommand("volume-ratio", "Uniform Bloch-ball census of cw > cl1 against cw = cl1");
  volume->add_option("--count", volume_args.count, "Number of samples")->required();

  CLI::App* mmcs = app.add_subcommand("mmcs", "Mixed maximally coherent states");
  mmcs->require_subcommand(1);
  mmcs->fallthrough();
  MmcsCheckArgs check_args;
  CLI::App* check = mmcs->add_subcommand("check", "Classify a state file");
  check->add_option("state", check_args.state_path, "State JSON file")->required();
  check->fallthrough();
  MmcsConstructArgs construct_args;
  CLI::App* build = mmcs->add_subcommand("construct", "Build a state with cw = 1 and verify it");
  build->add_option("--family", construct_args.family, "theorem2 or reversible")->required();
  build->add_option("--dim", construct_args.dim, "Dimension");
  build->add_option("--kernel", construct_args.kernel, "Comma-separated real kernel amplitudes (theorem2)");
  build->add_option("--mix", construct_args.mix, "Weight of the random part on the complement (theorem2)");
  build->add_option("--blocks", construct_args.blocks, "Comma-separated block sizes (reversible)");
  build->fallthrough();

  for (CLI::App* sub : {weight, qubit, sample_cmd, volume}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (weight->parsed()) return cmd_weight(weight_args, g, out);
    if (qubit->parsed()) {
      qubit_args.any_entry_flag = o00->count() + o11->count() + ore->count() + oim->count() > 0;
      return cmd_qubit(qubit_args, g, out);
    }
    if (sample_cmd->parsed()) return cmd_sample(sample_args, g, out);
    if (volume->parsed()) return cmd_volume_ratio(volume_args, g, out);
    if (check->parsed()) return cmd_mmcs_check(check_args, g, out);
    if (build->parsed()) return cmd_mmcs_construct(construct_args, g, out);
  } catch (const SolverStall& e) {
    err << "error: " << e.what() << " (certified interval [" << e.lower() << ", " << e.upper() << "])\n";
    return kExitStall;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerification;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  err << "error: no subcommand\n";
  return kExitInput;
}

}  // namespace cohere::cli
