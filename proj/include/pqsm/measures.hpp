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

/// @file measures.hpp
/// Entropic and entanglement measures. Every quantity is in bits.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pqsm/core.hpp"
#include "pqsm/tripartite.hpp"

namespace pqsm {

inline constexpr double kDefaultPptTolerance = 1e-9;
inline constexpr double kEntropyCutoff = 1e-12;

/// Shannon entropy of a spectrum, skipping eigenvalues <= 1e-12.
inline double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (double x : eigenvalues)
    if (x > kEntropyCutoff) s -= x * std::log2(x);
  return std::max(s, 0.0);
}

inline double von_neumann_entropy(const Matrix& rho) { return entropy_of_spectrum(eigvalsh(rho)); }

inline double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

/// Entropy of the reduction of `rho` onto `keep`.
inline double reduced_entropy(const DensityMatrix& rho, const IndexSet& keep) {
  if (keep.size() == rho.num_subsystems()) return von_neumann_entropy(rho);
  return von_neumann_entropy(partial_trace(rho.matrix(), rho.dims(), keep));
}

/// S(BC) - S(C). May be negative.
inline double conditional_entropy(const TripartiteState& rho) {
  return reduced_entropy(rho.state(), rho.bc()) - reduced_entropy(rho.state(), rho.c());
}

inline double mutual_information(const DensityMatrix& rho, const Bipartition& cut) {
  if (cut.num_subsystems() != rho.num_subsystems())
    throw std::invalid_argument("mutual_information: cut does not match state");
  const double value = reduced_entropy(rho, cut.left()) + reduced_entropy(rho, cut.right()) - von_neumann_entropy(rho);
  return std::max(value, 0.0);
}

namespace detail {

/// Columns V sqrt(lambda) over the eigenvalues above a relative floor, so that
/// rho = F F^dagger without rounding-noise directions.
inline Matrix psd_factor(const Matrix& m) {
  auto [values, vectors] = eigh(m);
  const double floor = 1e-15 * std::max(1.0, values.size() ? values.maxCoeff() : 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values(i) > floor) keep.push_back(i);
  Matrix out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    out.col(static_cast<Eigen::Index>(k)) = vectors.col(keep[k]) * std::sqrt(values(keep[k]));
  return out;
}

}  // namespace detail

/// Uhlmann fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)), in [0, 1]. Computed
/// as the nuclear norm of F_rho^dagger F_sigma for PSD factors F.
inline double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Matrix cross = detail::psd_factor(rho.matrix()).adjoint() * detail::psd_factor(sigma.matrix());
  if (cross.size() == 0) return 0.0;
  const double f = Eigen::JacobiSVD<Matrix>(cross).singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

inline double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dimension() != sigma.dimension()) throw std::invalid_argument("trace_distance: dimension mismatch");
  return std::clamp(0.5 * trace_norm(rho.matrix() - sigma.matrix()), 0.0, 1.0);
}

inline double min_partial_transpose_eigenvalue(const DensityMatrix& rho, const Bipartition& cut) {
  return eigvalsh(partial_transpose(rho, cut)).minCoeff();
}

inline double log_negativity(const DensityMatrix& rho, const Bipartition& cut) {
  return std::max(0.0, std::log2(trace_norm(partial_transpose(rho, cut))));
}

inline bool is_ppt(const DensityMatrix& rho, const Bipartition& cut, double tol = kDefaultPptTolerance) {
  if (tol < 0.0) throw std::invalid_argument("is_ppt: tolerance must be nonnegative");
  return min_partial_transpose_eigenvalue(rho, cut) >= -tol;
}

// ---------------------------------------------------------------------------
// distillability witnesses

struct WitnessValue {
  enum class Direction { kLowerBound, kUpperBound };
  enum class Quantity { kDistillableEntanglement };

  double value = 0.0;
  Direction direction = Direction::kLowerBound;
  Quantity quantity = Quantity::kDistillableEntanglement;
  Bipartition cut;
};

/// Best one-sided coherent information across `cut`. A positive value
/// certifies that distillable entanglement across the cut is positive.
inline WitnessValue hashing_witness(const DensityMatrix& rho, const Bipartition& cut) {
  const double whole = von_neumann_entropy(rho);
  const double left = reduced_entropy(rho, cut.left()) - whole;
  const double right = reduced_entropy(rho, cut.right()) - whole;
  return {std::max(left, right), WitnessValue::Direction::kLowerBound,
          WitnessValue::Quantity::kDistillableEntanglement, cut};
}

/// Logarithmic negativity as an upper bound on distillable entanglement.
inline WitnessValue negativity_witness(const DensityMatrix& rho, const Bipartition& cut) {
  return {log_negativity(rho, cut), WitnessValue::Direction::kUpperBound,
          WitnessValue::Quantity::kDistillableEntanglement, cut};
}

}  // namespace pqsm
