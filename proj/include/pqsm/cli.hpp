// Copyright 2026 The pqsm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

/// @file cli.hpp
/// The `pqsm` command line: generate | measure | classify | geodist | overlap.
///
/// Exit codes: 0 success, 2 usage / malformed input / unknown family /
/// invalid cut / missing labels, 3 generation failure or size cap exceeded,
/// 4 classifier consistency error, 1 anything else.
/// Data goes to stdout (or --out / --json); diagnostics go to stderr.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pqsm/classify.hpp"
#include "pqsm/families.hpp"
#include "pqsm/io.hpp"
#include "pqsm/measures.hpp"
#include "pqsm/ppt_opt.hpp"

namespace pqsm::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kGeneration = 3, kConsistency = 4 };

inline constexpr std::uint64_t kDefaultSeed = 7;

struct GlobalOptions {
  std::uint64_t seed = kDefaultSeed;
  double tol = classify::kDefaultTolerance;
  std::string out;
  std::string json;
  unsigned jobs = 1;
};

/// Thrown for failures that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

inline std::string format_value(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(12) << (v == 0.0 ? 0.0 : v);
  return ss.str();
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

// ---------------------------------------------------------------------------
// generate

struct GenerateArgs {
  std::string family;
  double p = 0.1;
  std::string psi = "phi-plus";
};

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{
      "sep-no-merge", "robust-vanishing", "phi-plus",    "phi-plus-2",          "product-pair",
      "product-example", "ghz",            "classical-correlated", "product-pure", "local-a-entangled-bc"};
  return names;
}

inline io::StateFile generate_state(const GenerateArgs& args, const GlobalOptions& g) {
  using namespace families;
  io::json meta = {{"family", args.family}};
  if (args.family == "sep-no-merge") {
    const SepNoMergeFamily fam = sep_no_merge_components(g.seed);
    meta["seed"] = g.seed;
    meta["effective_seed"] = fam.effective_seed;
    return io::StateFile::from(fam.state, meta);
  }
  if (args.family == "robust-vanishing") {
    meta["p"] = args.p;
    return io::StateFile::from(robust_vanishing_family(args.p), meta);
  }
  if (args.family == "phi-plus") return io::StateFile::from(phi_plus(), meta);
  if (args.family == "phi-plus-2") {
    // subsystem order A1 B1 A2 B2
    meta["default_cut"] = "0,2:1,3";
    return io::StateFile::from(tensor(phi_plus(), phi_plus()), meta);
  }
  if (args.family == "product-pair") return io::StateFile::from(tensor(ket0(), ket_plus()), meta);
  if (args.family == "product-example") {
    meta["psi"] = args.psi;
    if (args.psi == "phi-plus") return io::StateFile::from(product_example(phi_plus()), meta);
    if (args.psi == "product") return io::StateFile::from(product_example(tensor(ket0(), ket_plus())), meta);
    throw UsageError("unknown --psi '" + args.psi + "' (expected phi-plus or product)");
  }
  if (args.family == "ghz") return io::StateFile::from(ghz(), meta);
  if (args.family == "classical-correlated") return io::StateFile::from(classical_correlated(), meta);
  if (args.family == "product-pure") return io::StateFile::from(product_pure(ket0(), ket_plus(), ket1()), meta);
  if (args.family == "local-a-entangled-bc") return io::StateFile::from(local_a_entangled_bc(), meta);
  throw UsageError("unknown family '" + args.family + "'");
}

inline int cmd_generate(const GenerateArgs& args, const GlobalOptions& g, std::ostream& out) {
  const std::string text = io::serialize(generate_state(args, g));
  if (g.out.empty()) {
    out << text;
  } else {
    write_file(g.out, text);
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// measure

struct MeasureArgs {
  std::string state;
  std::string measure;
  std::string cut;
  std::string other;
};

inline io::StateFile load_state(const std::string& path) {
  try {
    return io::parse_state(read_file(path));
  } catch (const io::FormatError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

/// --cut if given, else the file's default, else the only cut of a bipartite
/// state, else A:BC for labeled states.
inline Bipartition resolve_cut(const std::string& spec, const io::StateFile& file) {
  std::string chosen = spec;
  if (chosen.empty() && file.meta.is_object() && file.meta.contains("default_cut"))
    chosen = file.meta["default_cut"].get<std::string>();
  if (chosen.empty()) {
    if (file.dims.size() == 2) {
      chosen = "0:1";
    } else if (file.labels) {
      chosen = "A:BC";
    } else {
      throw UsageError("a --cut is required for this state");
    }
  }
  try {
    return io::parse_cut(chosen, file.dims.size(), file.labels);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("invalid cut '") + chosen + "': " + e.what());
  }
}

inline TripartiteState require_tripartite(const io::StateFile& file) {
  auto t = file.tripartite();
  if (!t) throw UsageError("state has no A/B/C labels");
  return *t;
}

inline const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names{
      "entropy",  "conditional-entropy", "mutual-information", "log-negativity",       "is-ppt",      "hashing",
      "negativity", "fidelity",          "trace-distance",     "fidelity-lower-bound", "merging-cost"};
  return names;
}

inline int cmd_measure(const MeasureArgs& args, const GlobalOptions& g, std::ostream& out) {
  const io::StateFile file = load_state(args.state);
  const DensityMatrix rho = file.density();
  const std::string& m = args.measure;
  double value = 0.0;
  if (m == "entropy") {
    value = von_neumann_entropy(rho);
  } else if (m == "conditional-entropy") {
    value = conditional_entropy(require_tripartite(file));
  } else if (m == "mutual-information") {
    value = mutual_information(rho, resolve_cut(args.cut, file));
  } else if (m == "log-negativity") {
    value = log_negativity(rho, resolve_cut(args.cut, file));
  } else if (m == "is-ppt") {
    out << (is_ppt(rho, resolve_cut(args.cut, file), g.tol) ? "true" : "false") << "\n";
    return kOk;
  } else if (m == "hashing") {
    value = hashing_witness(rho, resolve_cut(args.cut, file)).value;
  } else if (m == "negativity") {
    value = negativity_witness(rho, resolve_cut(args.cut, file)).value;
  } else if (m == "fidelity" || m == "trace-distance") {
    if (args.other.empty()) throw UsageError(m + " needs --other STATE");
    const DensityMatrix sigma = load_state(args.other).density();
    if (sigma.dimension() != rho.dimension()) throw UsageError("states differ in dimension");
    value = m == "fidelity" ? fidelity(rho, sigma) : trace_distance(rho, sigma);
  } else if (m == "fidelity-lower-bound") {
    value = classify::fidelity_lower_bound(require_tripartite(file));
  } else if (m == "merging-cost") {
    const TripartiteState t = require_tripartite(file);
    if (t.state().purity() < 1.0 - 1e-9) throw UsageError("merging-cost needs a pure state");
    value = classify::merging_cost_pure(t);
  } else {
    throw UsageError("unknown measure '" + m + "'");
  }
  out << format_value(value) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// classify

struct ClassifyArgs {
  std::vector<std::string> states;
};

struct ClassifyOutcome {
  std::string verdict;
  std::string report;
  int code = kOk;
};

inline ClassifyOutcome classify_one(const std::string& path, const GlobalOptions& g) {
  const std::string bytes = read_file(path);
  const io::StateFile file = [&] {
    try {
      return io::parse_state(bytes);
    } catch (const io::FormatError& e) {
      throw UsageError(path + ": " + e.what());
    }
  }();
  const TripartiteState t = require_tripartite(file);
  const io::ReportConfig config{g.tol, g.seed};
  try {
    const auto report = classify::classify(t, g.tol);
    return {classify::to_string(report.verdict), io::report_json(report, bytes, config, utc_timestamp()).dump(2),
            kOk};
  } catch (const classify::ConsistencyError& e) {
    return {"CONSISTENCY_ERROR", io::report_json(e.report(), bytes, config, utc_timestamp()).dump(2),
            kConsistency};
  }
}

inline int cmd_classify(const ClassifyArgs& args, const GlobalOptions& g, std::ostream& out, std::ostream& err) {
  if (args.states.empty()) throw UsageError("classify needs at least one state file");
  std::vector<ClassifyOutcome> results(args.states.size());
  const std::size_t jobs = std::max<std::size_t>(1, g.jobs);
  for (std::size_t start = 0; start < args.states.size(); start += jobs) {
    std::vector<std::future<ClassifyOutcome>> batch;
    for (std::size_t i = start; i < std::min(start + jobs, args.states.size()); ++i)
      batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, classify_one,
                                 args.states[i], g));
    for (std::size_t k = 0; k < batch.size(); ++k) results[start + k] = batch[k].get();
  }

  int code = kOk;
  const bool many = args.states.size() > 1;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (many) out << args.states[i] << ": ";
    out << r.verdict << "\n";
    if (r.code == kConsistency) {
      err << args.states[i] << ": perfect and vanishing criteria both hold\n";
      code = kConsistency;
    }
    if (!g.json.empty()) {
      std::string target = g.json;
      if (many) {
        std::filesystem::create_directories(g.json);
        target = (std::filesystem::path(g.json) /
                  (std::filesystem::path(args.states[i]).stem().string() + ".report.json"))
                     .string();
      }
      write_file(target, r.report + "\n");
    }
  }
  return code;
}

// ---------------------------------------------------------------------------
// geodist / overlap

struct OptimizeArgs {
  std::string state;
  std::string cut;
  ppt::PptOptConfig config;
  std::string step_rule = "fixed";
};

inline ppt::PptOptConfig resolved_config(const OptimizeArgs& args) {
  ppt::PptOptConfig c = args.config;
  if (args.step_rule == "fixed") {
    c.step_rule = ppt::StepRule::kFixed;
  } else if (args.step_rule == "diminishing") {
    c.step_rule = ppt::StepRule::kDiminishing;
  } else {
    throw UsageError("unknown --step-rule '" + args.step_rule + "'");
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

inline void print_diagnostics(const ppt::PptOptResult& r, std::ostream& err) {
  err << "iterations=" << r.iterations << " converged=" << (r.converged ? "true" : "false")
      << " bisection=" << (r.used_bisection ? "true" : "false") << " min_eig=" << r.residuals.min_eigenvalue
      << " min_pt_eig=" << r.residuals.min_pt_eigenvalue << " trace_err=" << r.residuals.trace_error << "\n";
}

inline int cmd_geodist(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
  const io::StateFile file = load_state(args.state);
  const Bipartition cut = resolve_cut(args.cut, file);
  const auto config = resolved_config(args);
  const auto g = ppt::geometric_distillability_ppt(file.density(), cut, config);
  if (g.exact) {
    out << format_value(g.lower) << "\n";
  } else {
    out << format_value(g.lower) << " " << format_value(g.upper) << "\n";
  }
  print_diagnostics(g.optimization, err);
  return kOk;
}

inline int cmd_overlap(const OptimizeArgs& args, std::ostream& out, std::ostream& err) {
  const io::StateFile file = load_state(args.state);
  if (!file.is_pure()) throw UsageError("overlap needs a pure state (amplitudes)");
  const Bipartition cut = resolve_cut(args.cut, file);
  const auto r = ppt::max_overlap_ppt(std::get<PureState>(file.payload), cut, resolved_config(args));
  out << format_value(r.value) << "\n";
  print_diagnostics(r, err);
  return kOk;
}

// ---------------------------------------------------------------------------
// entry point

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PPT-assisted state merging toolkit", "pqsm"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--tol", g.tol, "classification / PPT tolerance")->capture_default_str();
  app.add_option("--out", g.out, "write generated state to this path");
  app.add_option("--json", g.json, "write the classification report here");
  app.add_option("--jobs", g.jobs, "parallel jobs across input files")->capture_default_str();

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "write a state file for a named family");
  generate->add_option("family", gen.family, "family name")->required();
  generate->add_option("--p", gen.p, "noise parameter for robust-vanishing")->capture_default_str();
  generate->add_option("--psi", gen.psi, "AB state for product-example: phi-plus | product")->capture_default_str();

  MeasureArgs meas;
  auto* measure = app.add_subcommand("measure", "evaluate a scalar measure");
  measure->add_option("state", meas.state, "state file")->required();
  measure->add_option("measure", meas.measure, "measure name")->required();
  measure->add_option("--cut", meas.cut, "bipartition, e.g. A:BC or 0,1:2");
  measure->add_option("--other", meas.other, "second state for fidelity / trace-distance");

  ClassifyArgs cls;
  auto* classify_cmd = app.add_subcommand("classify", "classify merging behaviour of labeled states");
  classify_cmd->add_option("states", cls.states, "state files")->required();

  OptimizeArgs geo, ovl;
  auto add_opt_flags = [](CLI::App* sub, OptimizeArgs& a) {
    sub->add_option("state", a.state, "state file")->required();
    sub->add_option("--cut", a.cut, "bipartition, e.g. 0:1 or 0,2:1,3");
    sub->add_option("--max-iters", a.config.max_iters)->capture_default_str();
    sub->add_option("--opt-tol", a.config.tol, "optimizer tolerance")->capture_default_str();
    sub->add_option("--step", a.config.step)->capture_default_str();
    sub->add_option("--step-rule", a.step_rule, "fixed | diminishing")->capture_default_str();
    sub->add_option("--bisection-depth", a.config.bisection_depth)->capture_default_str();
    sub->add_option("--inner-max-iters", a.config.inner_max_iters)->capture_default_str();
  };
  auto* geodist = app.add_subcommand("geodist", "geometric distillability over the PPT set");
  add_opt_flags(geodist, geo);
  auto* overlap = app.add_subcommand("overlap", "max overlap of a pure state with PPT states");
  add_opt_flags(overlap, ovl);

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, g, out);
    if (measure->parsed()) return cmd_measure(meas, g, out);
    if (classify_cmd->parsed()) return cmd_classify(cls, g, out, err);
    if (geodist->parsed()) return cmd_geodist(geo, out, err);
    if (overlap->parsed()) return cmd_overlap(ovl, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const families::GenerationError& e) {
    err << "error: " << e.what() << "\n";
    return kGeneration;
  } catch (const SizeLimitError& e) {
    err << "error: " << e.what() << "\n";
    return kGeneration;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace pqsm::cli
