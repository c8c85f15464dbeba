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

// Shared test fixtures: frozen reference values and oracles that are
// implemented independently of the library code paths they check.

#include <cmath>
#include <random>
#include <vector>

#include "pqsm/pqsm.hpp"

namespace pqsm::testing {

// Reference values computed with an independent numpy script
// (eigvalsh-based entropies, einsum partial traces, brentq root finding).
inline constexpr double kEntropyThreeQuartersQuarter = 0.811278124459133;  // H(3/4, 1/4)
inline constexpr double kRobustHashingAtTenth = 0.612683772206610;         // A:BC hashing at p = 0.1
inline constexpr double kRobustThreshold = 0.317068894938921;              // p_max for A:BC hashing > 0
// isotropic 1/2 phi+ + 1/2 I/4: partial transpose spectrum {3/8, 3/8, 3/8, -1/8}
inline const double kHalfIsotropicLogNegativity = std::log2(1.25);

/// Partial transpose on the subsystems flagged in `transpose`, written with
/// explicit digit decoding rather than offset tables.
inline Matrix naive_partial_transpose(const Matrix& m, const Dims& dims, const std::vector<bool>& transpose) {
  const auto n = m.rows();
  auto digits = [&](Eigen::Index idx) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
      d[k] = static_cast<std::size_t>(idx) % dims[k];
      idx /= static_cast<Eigen::Index>(dims[k]);
    }
    return d;
  };
  auto encode = [&](const std::vector<std::size_t>& d) {
    Eigen::Index idx = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) idx = idx * static_cast<Eigen::Index>(dims[k]) + static_cast<Eigen::Index>(d[k]);
    return idx;
  };
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      auto di = digits(i), dj = digits(j);
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (transpose[k]) std::swap(di[k], dj[k]);
      out(i, j) = m(encode(di), encode(dj));
    }
  return out;
}

/// rho_A of a two-qubit matrix by the textbook 4x4 sum.
inline Matrix naive_trace_second_qubit(const Matrix& m) {
  Matrix out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
  return out;
}

/// Random state that is PPT across `cut`: a Hilbert-Schmidt sample mixed
/// with white noise just enough to clear the PPT boundary (often no mixing).
inline DensityMatrix random_ppt_state(const Dims& dims, const Bipartition& cut, Rng& rng) {
  const DensityMatrix raw = random_density_matrix(dims, rng);
  const double lowest = eigvalsh(partial_transpose(raw, cut)).minCoeff();
  if (lowest >= 0.0) return raw;
  const auto d = static_cast<double>(raw.dimension());
  const double mix = std::min(1.0, -lowest / (-lowest + 1.0 / d) * 1.01);
  Matrix m = (1.0 - mix) * raw.matrix() + mix * Matrix::Identity(raw.matrix().rows(), raw.matrix().rows()) / d;
  return DensityMatrix(dims, m);
}

/// Random fully separable state over `dims`: mixture of product pure states.
inline DensityMatrix random_fully_separable(const Dims& dims, Rng& rng, int terms = 6) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const auto n = static_cast<Eigen::Index>(total_dimension(dims));
  Matrix m = Matrix::Zero(n, n);
  double total = 0.0;
  for (int t = 0; t < terms; ++t) {
    Vector v = Vector::Ones(1);
    for (std::size_t d : dims) v = kron(v, random_pure_state({d}, rng).amplitudes());
    const double w = u(rng);
    total += w;
    m += w * v * v.adjoint();
  }
  return DensityMatrix(dims, m / total);
}

/// Brute-force oracle for max <psi|sigma|psi> over two-qubit PPT states. In
/// 2x2 the PPT states are exactly the separable ones, and a linear objective
/// over separable states peaks at a product vector |a>|b>. Random restarts of
/// alternating maximization over a and b.
inline double brute_force_product_overlap(const PureState& psi, Rng& rng, int restarts = 40) {
  Eigen::Matrix2cd c;  // psi = sum_ij c_ij |i>|j>
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c(i, j) = psi.amplitudes()(2 * i + j);
  double best = 0.0;
  for (int r = 0; r < restarts; ++r) {
    Eigen::Vector2cd a = random_pure_state({2}, rng).amplitudes();
    Eigen::Vector2cd b;
    for (int sweep = 0; sweep < 200; ++sweep) {
      // overlap <psi|a,b> = a^T conj(c) b
      b = (c.adjoint() * a).conjugate().normalized();
      a = (c.conjugate() * b).conjugate().normalized();
    }
    const std::complex<double> amp = (a.transpose() * c.conjugate() * b)(0);
    best = std::max(best, std::norm(amp));
  }
  return best;
}

}  // namespace pqsm::testing
