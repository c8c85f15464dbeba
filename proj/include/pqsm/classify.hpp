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

/// @file classify.hpp
/// Decision procedure for merging a tripartite state rho^{ABC} from Bob to
/// Charlie with LOCC assisted by arbitrary PPT states.
///
/// Each criterion is three-valued. A criterion only reports true or false
/// when a computable witness certifies it at the given tolerance; everything
/// else is unknown, and the verdict falls back to INCONCLUSIVE.
///
///   perfect_sufficient      S(BC) - S(C) <= 0                  => PERFECT
///   vanishing_pqsm          D^{A:BC} > 0 and AB:C is PPT        => VANISHING
///   vanishing_lqsm          D^{A:BC} > 0 and D^{AB:C} = 0       (LOCC only)
///   necessary_ppt           D^{A:BC} <= D^{AB:C} violated       => NO_PERFECT_MERGE
///   sep_family_obstruction  sum_i p_i |i><i| (x) sigma_i with
///                           15 independent separable sigma_i    => NO_PERFECT_MERGE
///
/// D^{A:BC} > 0 is certified by a positive hashing witness; D^{AB:C} is
/// bounded above by the logarithmic negativity.

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pqsm/bloch.hpp"
#include "pqsm/core.hpp"
#include "pqsm/measures.hpp"
#include "pqsm/tripartite.hpp"

namespace pqsm::classify {

enum class Truth { kTrue, kFalse, kUnknown };
enum class Verdict { kPerfect, kVanishing, kNoPerfectMerge, kInconclusive };

inline const char* to_string(Truth t) {
  switch (t) {
    case Truth::kTrue: return "true";
    case Truth::kFalse: return "false";
    case Truth::kUnknown: return "unknown";
  }
  return "unknown";
}

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPerfect: return "PERFECT";
    case Verdict::kVanishing: return "VANISHING";
    case Verdict::kNoPerfectMerge: return "NO_PERFECT_MERGE";
    case Verdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

struct CriterionResult {
  std::string name;
  Truth holds = Truth::kUnknown;
  std::optional<double> witness;
  std::string statement;  // the inequality being tested
};

struct ClassificationReport {
  std::vector<CriterionResult> criteria;
  Verdict verdict = Verdict::kInconclusive;
  double fidelity_lower_bound = 1.0;
  bool consistency = true;
  std::map<std::string, double> witnesses;

  const CriterionResult& criterion(const std::string& name) const {
    for (const auto& c : criteria)
      if (c.name == name) return c;
    throw std::out_of_range("no criterion named " + name);
  }
};

/// Thrown when the PERFECT and VANISHING criteria both hold. Carries the
/// offending report (with consistency = false).
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(ClassificationReport report)
      : std::logic_error("perfect and vanishing criteria both hold"), report_(std::move(report)) {}
  const ClassificationReport& report() const { return report_; }

 private:
  ClassificationReport report_;
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kBlockTolerance = 1e-9;
inline constexpr double kMinBlockWeight = 1e-6;
inline constexpr std::size_t kObstructionRank = 15;

// ---------------------------------------------------------------------------
// criteria

inline CriterionResult check_perfect_sufficient(const TripartiteState& rho, double tol = kDefaultTolerance) {
  const double h = conditional_entropy(rho);
  return {"perfect_sufficient", h <= tol ? Truth::kTrue : Truth::kFalse, h, "S(BC) - S(C) <= 0"};
}

inline CriterionResult check_vanishing_pqsm(const TripartiteState& rho, double tol = kDefaultTolerance) {
  CriterionResult r{"vanishing_pqsm", Truth::kUnknown, std::nullopt, "D_LOCC(A:BC) > 0 and AB:C is PPT"};
  if (!is_ppt(rho.state(), rho.ab_vs_c(), tol)) {
    r.holds = Truth::kFalse;
    return r;
  }
  const double w = hashing_witness(rho.state(), rho.a_vs_bc()).value;
  r.witness = w;
  r.holds = w > tol ? Truth::kTrue : Truth::kUnknown;
  return r;
}

inline CriterionResult check_vanishing_lqsm(const TripartiteState& rho, double tol = kDefaultTolerance) {
  const double lower_a_bc = hashing_witness(rho.state(), rho.a_vs_bc()).value;
  const double upper_ab_c = negativity_witness(rho.state(), rho.ab_vs_c()).value;
  CriterionResult r{"vanishing_lqsm", Truth::kUnknown, lower_a_bc, "D_LOCC(A:BC) > D_LOCC(AB:C) = 0"};
  if (lower_a_bc > tol && upper_ab_c <= tol) {
    r.holds = Truth::kTrue;
  } else if (upper_ab_c > tol && hashing_witness(rho.state(), rho.ab_vs_c()).value > tol) {
    r.holds = Truth::kFalse;  // AB:C is certifiably distillable
  }
  return r;
}

inline CriterionResult check_necessary_ppt(const TripartiteState& rho, double tol = kDefaultTolerance) {
  const double lower_a_bc = hashing_witness(rho.state(), rho.a_vs_bc()).value;
  const double upper_ab_c = negativity_witness(rho.state(), rho.ab_vs_c()).value;
  const double margin = lower_a_bc - upper_ab_c;
  // holds == false means the necessary condition is violated
  return {"necessary_ppt", margin > tol ? Truth::kFalse : Truth::kUnknown, margin,
          "D_PPT(A:BC) <= D_PPT(AB:C)"};
}

/// Classical-quantum decomposition rho = sum_i p_i |i><i|^A (x) sigma_i^{BC}.
struct ClassicalQuantumBlocks {
  std::vector<double> weights;
  std::vector<DensityMatrix> blocks;
};

/// Splits `rho` into A-diagonal blocks when B and C are single qubits and all
/// off-diagonal A blocks vanish. Returns nullopt when that structure is absent.
inline std::optional<ClassicalQuantumBlocks> decompose_classical_quantum(const TripartiteState& rho) {
  const Dims& dims = rho.dims();
  if (rho.b().size() != 1 || rho.c().size() != 1) return std::nullopt;
  if (dims[rho.b().front()] != 2 || dims[rho.c().front()] != 2) return std::nullopt;
  IndexSet order = rho.a();
  order.push_back(rho.b().front());
  order.push_back(rho.c().front());
  const Matrix m = permute_subsystems(rho.state().matrix(), dims, order);
  const Eigen::Index block = 4;
  const Eigen::Index count = m.rows() / block;

  ClassicalQuantumBlocks out;
  for (Eigen::Index i = 0; i < count; ++i) {
    for (Eigen::Index j = 0; j < count; ++j) {
      if (i == j) continue;
      if (max_abs(m.block(i * block, j * block, block, block)) > kBlockTolerance) return std::nullopt;
    }
    const Matrix diag = m.block(i * block, i * block, block, block);
    const double p = diag.trace().real();
    if (p < kMinBlockWeight) return std::nullopt;
    out.weights.push_back(p);
    out.blocks.emplace_back(Dims{2, 2}, hermitian_part(diag / p));
  }
  return out;
}

inline CriterionResult check_sep_family_obstruction(const TripartiteState& rho, double tol = kDefaultTolerance) {
  CriterionResult r{"sep_family_obstruction", Truth::kFalse, std::nullopt,
                    "rho = sum_i p_i |i><i|^A (x) sigma_i^BC, sigma_i PPT, Bloch rank 15"};
  const auto cq = decompose_classical_quantum(rho);
  if (!cq) return r;
  const Bipartition b_vs_c({0}, 2);
  for (const auto& s : cq->blocks)
    if (!is_ppt(s, b_vs_c, tol)) return r;
  const std::size_t rank = bloch::rank_of_family(std::span<const DensityMatrix>(cq->blocks));
  r.witness = static_cast<double>(rank);
  if (rank == kObstructionRank) r.holds = Truth::kTrue;
  return r;
}

/// 2^{(I(A:C) - I(A:BC))/2}: the do-nothing lower bound on the LOCC merging
/// fidelity (Bob discards his share).
inline double fidelity_lower_bound(const TripartiteState& rho) {
  const DensityMatrix ac = partial_trace(rho.state(), rho.ac());
  const double i_a_c = mutual_information(ac, rho.a_vs_c_reduced());
  const double i_a_bc = mutual_information(rho.state(), rho.a_vs_bc());
  return std::min(1.0, std::exp2(0.5 * (i_a_c - i_a_bc)));
}

/// Quantum communication cost S(BC) - S(C) of merging a pure state; negative
/// values are the rate of singlets gained.
inline double merging_cost_pure(const TripartiteState& rho) {
  if (rho.state().purity() < 1.0 - 1e-9) throw std::invalid_argument("merging_cost_pure: state is not pure");
  return conditional_entropy(rho);
}

inline double merging_cost_pure(const PureState& psi, IndexSet a, IndexSet b, IndexSet c) {
  return merging_cost_pure(TripartiteState(DensityMatrix::from_pure(psi), std::move(a), std::move(b), std::move(c)));
}

/// Runs every criterion and issues a verdict with precedence
/// PERFECT > VANISHING > NO_PERFECT_MERGE > INCONCLUSIVE.
/// Throws ConsistencyError if PERFECT and VANISHING both hold.
inline ClassificationReport classify(const TripartiteState& rho, double tol = kDefaultTolerance) {
  ClassificationReport report;
  report.criteria = {check_perfect_sufficient(rho, tol), check_vanishing_pqsm(rho, tol),
                     check_vanishing_lqsm(rho, tol), check_necessary_ppt(rho, tol),
                     check_sep_family_obstruction(rho, tol)};
  report.fidelity_lower_bound = fidelity_lower_bound(rho);

  const DensityMatrix& s = rho.state();
  report.witnesses = {
      {"conditional_entropy", conditional_entropy(rho)},
      {"hashing_a_bc", hashing_witness(s, rho.a_vs_bc()).value},
      {"hashing_ab_c", hashing_witness(s, rho.ab_vs_c()).value},
      {"negativity_a_bc", negativity_witness(s, rho.a_vs_bc()).value},
      {"negativity_ab_c", negativity_witness(s, rho.ab_vs_c()).value},
      {"min_pt_eigenvalue_ab_c", min_partial_transpose_eigenvalue(s, rho.ab_vs_c())},
      {"mutual_information_a_bc", mutual_information(s, rho.a_vs_bc())},
      {"fidelity_lower_bound", report.fidelity_lower_bound},
  };

  const bool perfect = report.criterion("perfect_sufficient").holds == Truth::kTrue;
  const bool vanishing = report.criterion("vanishing_pqsm").holds == Truth::kTrue;
  const bool obstructed = report.criterion("sep_family_obstruction").holds == Truth::kTrue ||
                          report.criterion("necessary_ppt").holds == Truth::kFalse;
  if (perfect && vanishing) {
    report.consistency = false;
    throw ConsistencyError(std::move(report));
  }
  if (perfect) {
    report.verdict = Verdict::kPerfect;
  } else if (vanishing) {
    report.verdict = Verdict::kVanishing;
  } else if (obstructed) {
    report.verdict = Verdict::kNoPerfectMerge;
  } else {
    report.verdict = Verdict::kInconclusive;
  }
  return report;
}

}  // namespace pqsm::classify
