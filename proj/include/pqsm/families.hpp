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

/// @file families.hpp
/// Constructors for the tripartite state families used as merging examples.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "pqsm/bloch.hpp"
#include "pqsm/core.hpp"
#include "pqsm/measures.hpp"
#include "pqsm/tripartite.hpp"

namespace pqsm::families {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kSepFamilySize = 15;
inline constexpr double kSepWeightFloor = 0.01;
inline constexpr std::size_t kSepRetryCap = 100;

/// (|00> + |11>)/sqrt(2)
inline PureState phi_plus() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState::normalized({2, 2}, std::move(v));
}

inline PureState ket0() { return PureState::basis({2}, 0); }
inline PureState ket1() { return PureState::basis({2}, 1); }
inline PureState ket_plus() { return PureState::normalized({2}, Vector::Ones(2)); }

/// sum_i p_i |i><i|^A (x) sigma_i^{BC} with A of dimension weights.size().
inline TripartiteState classical_quantum_state(const std::vector<double>& weights,
                                               const std::vector<DensityMatrix>& blocks) {
  if (weights.size() != blocks.size() || weights.size() < 2)
    throw std::invalid_argument("classical_quantum_state: need matching weights and blocks (>= 2)");
  const Dims& bc_dims = blocks.front().dims();
  if (bc_dims.size() != 2) throw std::invalid_argument("classical_quantum_state: blocks must be bipartite");
  const auto block = static_cast<Eigen::Index>(blocks.front().dimension());
  const auto n = static_cast<Eigen::Index>(weights.size()) * block;
  Matrix rho = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].dims() != bc_dims) throw std::invalid_argument("classical_quantum_state: block dims differ");
    const auto off = static_cast<Eigen::Index>(i) * block;
    rho.block(off, off, block, block) = weights[i] * blocks[i].matrix();
  }
  Dims dims{weights.size()};
  dims.insert(dims.end(), bc_dims.begin(), bc_dims.end());
  return TripartiteState::consecutive(DensityMatrix(std::move(dims), std::move(rho)));
}

/// Ingredients of the separable family that cannot be merged perfectly.
struct SepNoMergeFamily {
  TripartiteState state;
  std::vector<double> weights;
  std::vector<DensityMatrix> blocks;
  std::uint64_t effective_seed;  // seed of the attempt that passed certification
};

namespace detail {

inline std::vector<double> floored_weights(Rng& rng, std::size_t count, double floor) {
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> raw(count);
  double total = 0.0;
  for (double& u : raw) total += (u = uniform(rng));
  // p_i = floor + (1 - count*floor) * u_i / sum(u): every weight >= floor, sum 1
  const double free_mass = 1.0 - static_cast<double>(count) * floor;
  for (double& u : raw) u = floor + free_mass * u / total;
  return raw;
}

}  // namespace detail

/// Fully separable state sum_{i<15} p_i |i><i|^A (x) sigma_i^{BC} whose 15
/// separable two-qubit blocks have linearly independent Bloch vectors.
/// Deterministic in `seed`; retries with seed+1, seed+2, ... until the Bloch
/// rank reaches 15.
inline SepNoMergeFamily sep_no_merge_components(std::uint64_t seed) {
  for (std::size_t attempt = 0; attempt < kSepRetryCap; ++attempt) {
    const std::uint64_t effective = seed + attempt;
    Rng rng(effective);
    std::vector<double> weights = detail::floored_weights(rng, kSepFamilySize, kSepWeightFloor);
    std::vector<DensityMatrix> blocks;
    blocks.reserve(kSepFamilySize);
    for (std::size_t i = 0; i < kSepFamilySize; ++i) blocks.push_back(bloch::random_separable_two_qubit(rng(), 4));
    if (bloch::rank_of_family(std::span<const DensityMatrix>(blocks)) != kSepFamilySize) continue;
    TripartiteState state = classical_quantum_state(weights, blocks);
    return {std::move(state), std::move(weights), std::move(blocks), effective};
  }
  throw GenerationError("sep_no_merge_family: Bloch rank 15 not reached within the retry cap");
}

inline TripartiteState sep_no_merge_family(std::uint64_t seed) { return sep_no_merge_components(seed).state; }

/// |psi><psi|^{AB} (x) |0><0|^C
inline TripartiteState product_example(const PureState& psi) {
  if (psi.dims().size() != 2) throw std::invalid_argument("product_example: psi must have two subsystems");
  return TripartiteState::consecutive(tensor(DensityMatrix::from_pure(psi), DensityMatrix::from_pure(ket0())));
}

/// (1-p) |phi+><phi+|^{AB} (x) |0><0|^C + p I/8
inline TripartiteState robust_vanishing_family(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("robust_vanishing_family: p must lie in (0, 1)");
  const Matrix core = kron(phi_plus().projector(), ket0().projector());
  Matrix rho = (1.0 - p) * core + p * Matrix::Identity(8, 8) / 8.0;
  return TripartiteState::consecutive(DensityMatrix({2, 2, 2}, std::move(rho)));
}

/// Largest p for which the A:BC hashing witness of robust_vanishing_family(p)
/// stays positive, located by bisection. The witness is decreasing in p.
inline double robust_vanishing_threshold(int depth = 60) {
  auto witness = [](double p) {
    const TripartiteState s = robust_vanishing_family(p);
    return hashing_witness(s.state(), s.a_vs_bc()).value;
  };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  for (int k = 0; k < depth; ++k) {
    const double mid = 0.5 * (lo + hi);
    (witness(mid) > 0.0 ? lo : hi) = mid;
  }
  return lo;
}

/// eps * sigma + (1 - eps) * rho, keeping rho's party labels.
inline TripartiteState perturb(const TripartiteState& rho, const TripartiteState& sigma, double eps) {
  if (rho.dims() != sigma.dims()) throw std::invalid_argument("perturb: dims differ");
  if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("perturb: eps must lie in [0, 1]");
  if (eps == 0.0) return rho;
  if (eps == 1.0) return TripartiteState(sigma.state(), rho.a(), rho.b(), rho.c());
  Matrix mixed = eps * sigma.state().matrix() + (1.0 - eps) * rho.state().matrix();
  return TripartiteState(DensityMatrix(rho.dims(), std::move(mixed)), rho.a(), rho.b(), rho.c());
}

/// (|000> + |111>)/sqrt(2)
inline TripartiteState ghz() {
  Vector v = Vector::Zero(8);
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return TripartiteState::consecutive(DensityMatrix::from_pure(PureState::normalized({2, 2, 2}, std::move(v))));
}

/// (|000><000| + |111><111|)/2
inline TripartiteState classical_correlated() {
  Matrix rho = Matrix::Zero(8, 8);
  rho(0, 0) = rho(7, 7) = 0.5;
  return TripartiteState::consecutive(DensityMatrix({2, 2, 2}, std::move(rho)));
}

/// |alpha>^A (x) |beta>^B (x) |gamma>^C
inline TripartiteState product_pure(const PureState& alpha, const PureState& beta, const PureState& gamma) {
  const PureState all = tensor(tensor(alpha, beta), gamma);
  return TripartiteState::consecutive(DensityMatrix::from_pure(all));
}

/// |0>^A (x) |phi+>^{BC}: Charlie already holds Bob's share.
inline TripartiteState local_a_entangled_bc() {
  return TripartiteState::consecutive(DensityMatrix::from_pure(tensor(ket0(), phi_plus())));
}

}  // namespace pqsm::families
