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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Registered with ctest as `acceptance`.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "pqsm/cli.hpp"
#include "pqsm/pqsm.hpp"

namespace {

using namespace pqsm;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

PureState phi_plus_power(int n) { return n == 1 ? families::phi_plus() : tensor(families::phi_plus(), families::phi_plus()); }
Bipartition phi_plus_cut(int n) { return n == 1 ? Bipartition({0}, 2) : Bipartition({0, 2}, 4); }

Outcome overlap_bound() {
  std::string detail;
  bool pass = true;
  const double limits[] = {5.0, 60.0};
  for (int n = 1; n <= 2; ++n) {
    const auto start = Clock::now();
    const auto r = ppt::max_overlap_ppt(phi_plus_power(n), phi_plus_cut(n));
    const double elapsed = seconds_since(start);
    const double target = std::pow(2.0, -n);
    const bool feasible = is_ppt(r.certificate, phi_plus_cut(n), 10 * ppt::PptOptConfig{}.tol) &&
                          r.residuals.min_eigenvalue >= -1e-6;
    const bool ok = std::abs(r.value - target) <= 1e-3 && elapsed < limits[n - 1] && feasible &&
                    std::sqrt(r.value) <= std::pow(2.0, -0.5 * n) + 1e-3;
    pass = pass && ok;
    detail += fmt("n=%d value=%.6f (%.3fs) ", n, r.value, elapsed);
  }
  return {pass, detail};
}

Outcome geodist_trend() {
  double values[2];
  for (int n = 1; n <= 2; ++n)
    values[n - 1] =
        ppt::geometric_distillability_ppt(DensityMatrix::from_pure(phi_plus_power(n)), phi_plus_cut(n)).value();
  const bool pass = std::abs(values[0] - (1.0 - std::pow(2.0, -0.5))) <= 1e-3 &&
                    std::abs(values[1] - 0.5) <= 1e-3 && values[1] > values[0];
  return {pass, fmt("n=1 %.6f, n=2 %.6f", values[0], values[1])};
}

Outcome sep_family_pipeline() {
  int ok = 0;
  const Bipartition b_vs_c({0}, 2);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    std::ostringstream out, err;
    if (cli::run({"--seed", std::to_string(seed), "generate", "sep-no-merge"}, out, err) != 0) continue;
    const auto file = io::parse_state(out.str());
    const auto state = *file.tripartite();
    const auto cq = classify::decompose_classical_quantum(state);
    if (file.dims != Dims{15, 2, 2} || !cq || cq->blocks.size() != 15) continue;
    bool blocks_ppt = true;
    for (const auto& block : cq->blocks) blocks_ppt = blocks_ppt && is_ppt(block, b_vs_c);
    const auto rank = bloch::rank_of_family(std::span<const DensityMatrix>(cq->blocks));
    if (blocks_ppt && rank == 15 && classify::classify(state).verdict == classify::Verdict::kNoPerfectMerge) ++ok;
  }
  return {ok == 100, fmt("%d/100 seeds", ok)};
}

Outcome product_dichotomy() {
  using families::product_example;
  const auto product = classify::classify(product_example(tensor(families::ket0(), families::ket_plus())));
  const auto entangled = classify::classify(product_example(families::phi_plus()));
  const double w8 = *product.criterion("perfect_sufficient").witness;
  const double hashing = entangled.witnesses.at("hashing_a_bc");
  const double negativity = entangled.witnesses.at("negativity_ab_c");
  const bool pass = product.verdict == classify::Verdict::kPerfect && std::abs(w8) <= 1e-9 &&
                    entangled.verdict == classify::Verdict::kVanishing && std::abs(hashing - 1.0) <= 1e-9 &&
                    std::abs(negativity) <= 1e-9;
  return {pass, fmt("product %s (S(B|C)=%.2e), entangled %s (hashing %.9f, neg %.2e)",
                    classify::to_string(product.verdict), w8, classify::to_string(entangled.verdict), hashing,
                    negativity)};
}

Outcome robust_family() {
  const auto rho = families::robust_vanishing_family(0.1);
  const bool base = classify::classify(rho).verdict == classify::Verdict::kVanishing;
  Rng rng(2024);
  int kept = 0;
  for (int k = 0; k < 100; ++k) {
    const auto sigma = TripartiteState::consecutive(random_density_matrix({2, 2, 2}, rng));
    if (classify::classify(families::perturb(rho, sigma, 1e-3)).verdict == classify::Verdict::kVanishing) ++kept;
  }
  return {base && kept == 100, fmt("base %s, %d/100 perturbations kept", base ? "VANISHING" : "other", kept)};
}

Outcome metric_sandwich() {
  Rng rng(6);
  const Dims shapes[] = {{2}, {3}, {2, 2}, {2, 3}, {3, 3}, {2, 2, 2}, {2, 2, 2, 2}};
  std::uniform_int_distribution<int> pick(0, 6), rank(0, 3);
  int violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const Dims& dims = shapes[pick(rng)];
    const auto a = random_density_matrix(dims, rng, static_cast<std::size_t>(rank(rng)));
    const auto b = random_density_matrix(dims, rng, static_cast<std::size_t>(rank(rng)));
    const double f = fidelity(a, b), t = trace_distance(a, b);
    if (1.0 - f > t + 1e-8 || t > std::sqrt(1.0 - f * f) + 1e-8) ++violations;
  }
  return {violations == 0, fmt("%d violations in 1000 pairs", violations)};
}

Outcome merging_costs() {
  const double one = classify::merging_cost_pure(tensor(families::phi_plus(), families::ket0()), {0}, {1}, {2});
  const double zero = classify::merging_cost_pure(families::ghz());
  const double minus = classify::merging_cost_pure(tensor(families::ket0(), families::phi_plus()), {0}, {1}, {2});
  const bool pass = std::abs(one - 1.0) <= 1e-9 && std::abs(zero) <= 1e-9 && std::abs(minus + 1.0) <= 1e-9;
  return {pass, fmt("%.12f %.12f %.12f", one, zero, minus)};
}

Outcome witness_ordering() {
  Rng rng(8);
  const Dims shapes[] = {{2, 2, 2}, {2, 3}, {3, 2, 2}};
  int violations = 0;
  for (int k = 0; k < 1000; ++k) {
    const Dims& dims = shapes[k % 3];
    const auto rho = random_density_matrix(dims, rng, 1 + static_cast<std::size_t>(k % 5));
    for (std::size_t left = 0; left < dims.size(); ++left) {
      const Bipartition cut({left}, dims.size());
      if (hashing_witness(rho, cut).value > negativity_witness(rho, cut).value + 1e-8) ++violations;
    }
  }
  int ppt_violations = 0;
  for (int k = 0; k < 300; ++k) {
    const Dims& dims = shapes[k % 3];
    const Bipartition cut({0}, dims.size());
    const auto rho = testing::random_ppt_state(dims, cut, rng);
    if (hashing_witness(rho, cut).value > 1e-8 || negativity_witness(rho, cut).value > 1e-8) ++ppt_violations;
  }
  return {violations == 0 && ppt_violations == 0,
          fmt("%d ordering violations in 1000 states, %d on 300 PPT samples", violations, ppt_violations)};
}

Outcome oracle_equivalence() {
  Rng rng(9);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const PureState psi = random_pure_state({2, 2}, rng);
    const double value = ppt::max_overlap_ppt(psi, Bipartition({0}, 2)).value;
    worst = std::max(worst, std::abs(value - testing::brute_force_product_overlap(psi, rng)));
  }
  return {worst <= 1e-3, fmt("max deviation %.2e over 50 targets", worst)};
}

Outcome fidelity_floor() {
  Rng rng(10);
  const Dims shapes[] = {{2, 2, 2}, {3, 2, 2}, {2, 3, 2}, {2, 2, 3}};
  int outside = 0;
  double smallest = 1.0;
  for (int k = 0; k < 1000; ++k) {
    const auto state = TripartiteState::consecutive(
        random_density_matrix(shapes[k % 4], rng, 1 + static_cast<std::size_t>(k % 6)));
    const double f = classify::fidelity_lower_bound(state);
    smallest = std::min(smallest, f);
    if (!(f > 0.0 && f <= 1.0)) ++outside;
  }
  const double example = classify::fidelity_lower_bound(families::product_example(families::phi_plus()));
  return {outside == 0 && std::abs(example - 0.5) <= 1e-9,
          fmt("%d outside (0,1], min %.4f, product example %.12f", outside, smallest, example)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"maximally entangled overlap bound", overlap_bound},
      {"geometric distillability trend", geodist_trend},
      {"separable no-merge family pipeline", sep_family_pipeline},
      {"product vs entangled dichotomy", product_dichotomy},
      {"robust vanishing family", robust_family},
      {"fidelity / trace distance sandwich", metric_sandwich},
      {"pure-state merging cost", merging_costs},
      {"witness ordering", witness_ordering},
      {"optimizer vs brute-force oracle", oracle_equivalence},
      {"fidelity floor", fidelity_floor},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("[%s] %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
