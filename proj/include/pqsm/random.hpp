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

// Seeded samplers. All draws go through std::mt19937_64 so a seed fixes the
// output on a given standard library.

#include <cstdint>
#include <random>

#include "pqsm/core.hpp"

namespace pqsm {

using Rng = std::mt19937_64;

inline Vector random_gaussian_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cplx(normal(rng), normal(rng));
  return v;
}

/// Unitarily invariant random pure state.
inline PureState random_pure_state(const Dims& dims, Rng& rng) {
  return PureState::normalized(dims, random_gaussian_vector(total_dimension(dims), rng));
}

/// Induced-measure mixed state: partial trace of a random pure state with an
/// ancilla of size `rank` (rank == dimension gives Hilbert-Schmidt measure).
inline DensityMatrix random_density_matrix(const Dims& dims, Rng& rng, std::size_t rank = 0) {
  const std::size_t n = total_dimension(dims);
  if (rank == 0) rank = n;
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(rank));
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = random_gaussian_vector(n, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(dims, hermitian_part(rho));
}

inline Matrix random_unitary(std::size_t n, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = random_gaussian_vector(n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cplx d = r(j, j);
    q.col(j) *= std::abs(d) > 0.0 ? d / std::abs(d) : cplx(1.0);
  }
  return q;
}

inline Matrix random_hermitian(std::size_t n, Rng& rng) {
  Matrix g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < g.cols(); ++j) g.col(j) = random_gaussian_vector(n, rng);
  return hermitian_part(g);
}

}  // namespace pqsm
