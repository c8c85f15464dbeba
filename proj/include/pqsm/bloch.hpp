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

/// @file bloch.hpp
/// Generalized Bloch vectors over the Gell-Mann basis, and rank certification
/// of state families by their Bloch coordinates.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "pqsm/core.hpp"
#include "pqsm/random.hpp"

namespace pqsm::bloch {

inline constexpr std::size_t kMaxBasisDimension = 16;
inline constexpr double kRankThreshold = 1e-8;

/// Traceless Hermitian basis with Tr(G_i G_j) = 2 delta_ij.
struct OperatorBasis {
  std::size_t dim = 0;
  std::vector<Matrix> elements;
};

struct BlochVector {
  std::size_t dim = 0;
  RealVector coords;
};

/// Generalized Gell-Mann matrices for dimension d, ordered as: symmetric
/// pairs (j<k), antisymmetric pairs (j<k), then the d-1 diagonal elements.
/// For d = 2 this is exactly (X, Y, Z).
inline OperatorBasis gell_mann_basis(std::size_t d) {
  if (d < 2 || d > kMaxBasisDimension)
    throw std::invalid_argument("gell_mann_basis: dimension must be in [2, 16]");
  const auto n = static_cast<Eigen::Index>(d);
  OperatorBasis basis{d, {}};
  basis.elements.reserve(d * d - 1);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix g = Matrix::Zero(n, n);
      g(j, k) = 1.0;
      g(k, j) = 1.0;
      basis.elements.push_back(std::move(g));
    }
  const cplx i(0.0, 1.0);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix g = Matrix::Zero(n, n);
      g(j, k) = -i;
      g(k, j) = i;
      basis.elements.push_back(std::move(g));
    }
  for (Eigen::Index l = 1; l < n; ++l) {
    const double scale = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    Matrix g = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < l; ++j) g(j, j) = scale;
    g(l, l) = -scale * static_cast<double>(l);
    basis.elements.push_back(std::move(g));
  }
  return basis;
}

/// coords_i = Tr(rho G_i) over the composite dimension of `rho`.
inline BlochVector bloch_coords(const Matrix& rho, const OperatorBasis& basis) {
  if (static_cast<std::size_t>(rho.rows()) != basis.dim)
    throw std::invalid_argument("bloch_coords: basis dimension mismatch");
  BlochVector v{basis.dim, RealVector(static_cast<Eigen::Index>(basis.elements.size()))};
  for (std::size_t k = 0; k < basis.elements.size(); ++k)
    v.coords(static_cast<Eigen::Index>(k)) = (rho * basis.elements[k]).trace().real();
  return v;
}

inline BlochVector bloch_coords(const DensityMatrix& rho) {
  return bloch_coords(rho.matrix(), gell_mann_basis(rho.dimension()));
}

/// rho = I/d + 1/2 sum_i coords_i G_i. Hermitian and unit trace, not
/// necessarily positive.
inline Matrix reconstruct(const BlochVector& v, const OperatorBasis& basis) {
  if (v.dim != basis.dim || static_cast<std::size_t>(v.coords.size()) != basis.elements.size())
    throw std::invalid_argument("reconstruct: basis mismatch");
  const auto n = static_cast<Eigen::Index>(v.dim);
  Matrix rho = Matrix::Identity(n, n) / static_cast<double>(n);
  for (std::size_t k = 0; k < basis.elements.size(); ++k)
    rho += 0.5 * v.coords(static_cast<Eigen::Index>(k)) * basis.elements[k];
  return rho;
}

inline Matrix reconstruct(const BlochVector& v) { return reconstruct(v, gell_mann_basis(v.dim)); }

/// Numerical rank of the stacked Bloch vectors, singular values counted above
/// 1e-8 times the largest one.
inline std::size_t rank_of_family(std::span<const Matrix> states) {
  if (states.empty()) throw std::invalid_argument("rank_of_family: empty family");
  const std::size_t d = static_cast<std::size_t>(states.front().rows());
  const OperatorBasis basis = gell_mann_basis(d);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(states.size()), static_cast<Eigen::Index>(d * d - 1));
  for (std::size_t r = 0; r < states.size(); ++r) {
    if (static_cast<std::size_t>(states[r].rows()) != d)
      throw std::invalid_argument("rank_of_family: states differ in dimension");
    rows.row(static_cast<Eigen::Index>(r)) = bloch_coords(states[r], basis).coords.transpose();
  }
  const RealVector sv = Eigen::JacobiSVD<Eigen::MatrixXd>(rows).singularValues();
  // an all-zero family (only maximally mixed states) has rank 0
  if (sv.size() == 0 || sv(0) <= 1e-14) return 0;
  std::size_t rank = 0;
  for (double s : sv)
    if (s > kRankThreshold * sv(0)) ++rank;
  return rank;
}

inline std::size_t rank_of_family(std::span<const DensityMatrix> states) {
  std::vector<Matrix> raw;
  raw.reserve(states.size());
  for (const auto& s : states) raw.push_back(s.matrix());
  return rank_of_family(std::span<const Matrix>(raw));
}

/// Convex mixture of `mixing_terms` random product pure states on two qubits.
inline DensityMatrix random_separable_two_qubit(std::uint64_t seed, std::size_t mixing_terms = 4) {
  if (mixing_terms < 1) throw std::invalid_argument("random_separable_two_qubit: need at least one term");
  Rng rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> weights(mixing_terms);
  double total = 0.0;
  for (double& w : weights) total += (w = uniform(rng) + 1e-3);
  Matrix rho = Matrix::Zero(4, 4);
  for (double w : weights) {
    const PureState b = random_pure_state({2}, rng);
    const PureState c = random_pure_state({2}, rng);
    const Vector v = kron(b.amplitudes(), c.amplitudes());
    rho += (w / total) * (v * v.adjoint());
  }
  return DensityMatrix({2, 2}, hermitian_part(rho));
}

}  // namespace pqsm::bloch
