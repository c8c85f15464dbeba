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

/// @file core.hpp
/// Dense Hermitian algebra over tensor-factored Hilbert spaces.
///
/// Index convention: for dims [d0, d1, ..., dn-1] the flat basis index of
/// |i0 i1 ... in-1> is i0*d1*...*dn-1 + ... + in-1, i.e. the first listed
/// subsystem is the most significant digit.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pqsm {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<std::size_t>;
using IndexSet = std::vector<std::size_t>;

inline constexpr std::size_t kDefaultDimensionCap = 4096;

/// Raised when a composite dimension exceeds the configured cap.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised when a numerical kernel fails to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace tolerance {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPsd = 1e-9;
inline constexpr double kNorm = 1e-12;
// Eigenvalues in [-kPsd, -kClampFloor) are clamped at construction; anything
// above kClampFloor is rounding noise and left untouched so that
// reconstruction is a fixed point.
inline constexpr double kClampFloor = 1e-12;
inline constexpr double kEighHermitian = 1e-8;
}  // namespace tolerance

// ---------------------------------------------------------------------------
// dimension helpers

/// Product of `dims`, validating each factor and the cap.
inline std::size_t total_dimension(const Dims& dims,
                                   std::size_t cap = kDefaultDimensionCap) {
  if (dims.empty()) throw std::invalid_argument("dims must not be empty");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d < 2) throw std::invalid_argument("every subsystem dimension must be >= 2");
    if (total > cap / d) {
      throw SizeLimitError("composite dimension exceeds cap of " + std::to_string(cap));
    }
    total *= d;
  }
  return total;
}

namespace detail {

inline std::vector<std::size_t> strides(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

/// Flat offsets of every basis state of the subsystems in `subset`, embedded
/// in the full index space (other digits zero). Ordered big-endian over subset.
inline std::vector<std::size_t> embedded_offsets(const Dims& dims, const IndexSet& subset) {
  const auto full = strides(dims);
  std::vector<std::size_t> offsets{0};
  for (std::size_t k : subset) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[k]);
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < dims[k]; ++digit) next.push_back(base + digit * full[k]);
    offsets = std::move(next);
  }
  return offsets;
}

inline IndexSet complement(const IndexSet& subset, std::size_t n) {
  IndexSet out;
  for (std::size_t k = 0; k < n; ++k)
    if (std::find(subset.begin(), subset.end(), k) == subset.end()) out.push_back(k);
  return out;
}

inline IndexSet normalized_index_set(IndexSet set, std::size_t n, const char* what) {
  std::sort(set.begin(), set.end());
  if (std::adjacent_find(set.begin(), set.end()) != set.end())
    throw std::invalid_argument(std::string(what) + ": duplicate subsystem index");
  if (!set.empty() && set.back() >= n)
    throw std::invalid_argument(std::string(what) + ": subsystem index out of range");
  return set;
}

}  // namespace detail

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double hermiticity_error(const Matrix& m) { return max_abs(m - m.adjoint()); }

inline Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// ---------------------------------------------------------------------------
// Bipartition

/// A cut of the subsystem list into two nonempty complementary sides.
class Bipartition {
 public:
  Bipartition(IndexSet left, std::size_t num_subsystems) : n_(num_subsystems) {
    left_ = detail::normalized_index_set(std::move(left), n_, "bipartition");
    right_ = detail::complement(left_, n_);
    if (left_.empty() || right_.empty())
      throw std::invalid_argument("bipartition sides must both be nonempty");
  }

  Bipartition(IndexSet left, IndexSet right, std::size_t num_subsystems)
      : Bipartition(std::move(left), num_subsystems) {
    if (detail::normalized_index_set(std::move(right), n_, "bipartition") != right_)
      throw std::invalid_argument("bipartition sides must be complementary");
  }

  const IndexSet& left() const { return left_; }
  const IndexSet& right() const { return right_; }
  std::size_t num_subsystems() const { return n_; }
  Bipartition swapped() const { return Bipartition(right_, n_); }

  friend bool operator==(const Bipartition&, const Bipartition&) = default;

 private:
  IndexSet left_;
  IndexSet right_;
  std::size_t n_;
};

// ---------------------------------------------------------------------------
// spectral primitives

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

/// Hermitian eigendecomposition (ascending eigenvalues).
inline EigenSystem eigh(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigh: matrix must be square");
  if (hermiticity_error(m) > tolerance::kEighHermitian * std::max(1.0, max_abs(m)))
    throw std::invalid_argument("eigh: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw NumericError("eigh: eigensolver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline RealVector eigvalsh(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eigvalsh: matrix must be square");
  if (hermiticity_error(m) > tolerance::kEighHermitian * std::max(1.0, max_abs(m)))
    throw std::invalid_argument("eigvalsh: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("eigvalsh: eigensolver did not converge");
  return solver.eigenvalues();
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
inline double trace_norm(const Matrix& m) { return eigvalsh(m).cwiseAbs().sum(); }

/// PSD square root; eigenvalues in [-1e-9, 0) are clamped to zero.
inline Matrix matrix_sqrt(const Matrix& m) {
  auto [values, vectors] = eigh(m);
  if (values.size() > 0 && values.minCoeff() < -tolerance::kPsd * std::max(1.0, max_abs(m)))
    throw std::invalid_argument("matrix_sqrt: matrix is not positive semidefinite");
  RealVector roots = values.unaryExpr([](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
  return vectors * roots.cast<cplx>().asDiagonal() * vectors.adjoint();
}

// ---------------------------------------------------------------------------
// states

/// Normalized state vector over a tensor factorization.
class PureState {
 public:
  PureState(Dims dims, Vector amplitudes) : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_))
      throw std::invalid_argument("PureState: amplitude count does not match dims");
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > tolerance::kNorm)
      throw std::invalid_argument("PureState: amplitudes are not normalized");
  }

  /// Rescales `amplitudes` to unit norm before construction.
  static PureState normalized(Dims dims, Vector amplitudes) {
    const double norm = amplitudes.norm();
    if (norm == 0.0) throw std::invalid_argument("PureState: zero vector");
    return PureState(std::move(dims), amplitudes / norm);
  }

  static PureState basis(Dims dims, std::size_t index) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(total_dimension(dims)));
    if (index >= static_cast<std::size_t>(v.size())) throw std::invalid_argument("basis index out of range");
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(dims), std::move(v));
  }

  const Dims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Dims dims_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over `dims`.
///
/// Construction symmetrizes the input and, when the spectrum dips into
/// [-1e-9, -1e-12), clamps those eigenvalues to zero and renormalizes.
/// More negative spectra, trace or Hermiticity violations are rejected.
class DensityMatrix {
 public:
  DensityMatrix(Dims dims, Matrix data, std::size_t cap = kDefaultDimensionCap) : dims_(std::move(dims)) {
    const auto n = static_cast<Eigen::Index>(total_dimension(dims_, cap));
    if (data.rows() != n || data.cols() != n)
      throw std::invalid_argument("DensityMatrix: matrix size does not match dims");
    if (hermiticity_error(data) > tolerance::kHermitian)
      throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
    data_ = hermitian_part(data);
    if (std::abs(data_.trace().real() - 1.0) > tolerance::kTrace)
      throw std::invalid_argument("DensityMatrix: trace is not 1");
    auto [values, vectors] = eigh(data_);
    const double lowest = values.minCoeff();
    if (lowest < -tolerance::kPsd)
      throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
    if (lowest < -tolerance::kClampFloor) {
      values = values.cwiseMax(0.0);
      values /= values.sum();
      data_ = hermitian_part(vectors * values.cast<cplx>().asDiagonal() * vectors.adjoint());
    }
  }

  static DensityMatrix from_pure(const PureState& psi) { return DensityMatrix(psi.dims(), psi.projector()); }

  static DensityMatrix maximally_mixed(Dims dims) {
    const auto n = static_cast<Eigen::Index>(total_dimension(dims));
    return DensityMatrix(std::move(dims), Matrix::Identity(n, n) / static_cast<double>(n));
  }

  const Dims& dims() const { return dims_; }
  const Matrix& matrix() const { return data_; }
  std::size_t dimension() const { return static_cast<std::size_t>(data_.rows()); }
  std::size_t num_subsystems() const { return dims_.size(); }
  double purity() const { return (data_ * data_).trace().real(); }

 private:
  Dims dims_;
  Matrix data_;
};

// ---------------------------------------------------------------------------
// composition and reduction

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b,
                            std::size_t cap = kDefaultDimensionCap) {
  Dims dims = concat(a.dims(), b.dims());
  total_dimension(dims, cap);
  return DensityMatrix(std::move(dims), kron(a.matrix(), b.matrix()), cap);
}

inline PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = concat(a.dims(), b.dims());
  total_dimension(dims);
  Vector v(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    v.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()(i) * b.amplitudes();
  return PureState::normalized(std::move(dims), std::move(v));
}

/// Reduced matrix on the (sorted) subsystems in `keep`.
inline Matrix partial_trace(const Matrix& m, const Dims& dims, IndexSet keep) {
  keep = detail::normalized_index_set(std::move(keep), dims.size(), "partial_trace");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must not be empty");
  const auto kept = detail::embedded_offsets(dims, keep);
  const auto traced = detail::embedded_offsets(dims, detail::complement(keep, dims.size()));
  const auto n = static_cast<Eigen::Index>(kept.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t t : traced)
        acc += m(static_cast<Eigen::Index>(kept[static_cast<std::size_t>(i)] + t),
                 static_cast<Eigen::Index>(kept[static_cast<std::size_t>(j)] + t));
      out(i, j) = acc;
    }
  return out;
}

inline Dims restrict_dims(const Dims& dims, const IndexSet& keep) {
  Dims out;
  for (std::size_t k : keep) out.push_back(dims.at(k));
  return out;
}

/// Reorders subsystems so that new subsystem k is old subsystem order[k].
inline Matrix permute_subsystems(const Matrix& m, const Dims& dims, const IndexSet& order) {
  IndexSet check = detail::normalized_index_set(order, dims.size(), "permute_subsystems");
  if (check.size() != dims.size()) throw std::invalid_argument("permute_subsystems: order must be a permutation");
  // offsets of the new basis states in the old index space
  const auto old_offsets = detail::embedded_offsets(dims, order);
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < old_offsets.size(); ++i)
    for (std::size_t j = 0; j < old_offsets.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          m(static_cast<Eigen::Index>(old_offsets[i]), static_cast<Eigen::Index>(old_offsets[j]));
  return out;
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, IndexSet keep) {
  keep = detail::normalized_index_set(std::move(keep), rho.num_subsystems(), "partial_trace");
  Matrix reduced = partial_trace(rho.matrix(), rho.dims(), keep);
  return DensityMatrix(restrict_dims(rho.dims(), keep), std::move(reduced));
}

/// Transposes the left side of `cut`. A pure index permutation, so applying
/// it twice reproduces the input bit for bit.
inline Matrix partial_transpose(const Matrix& m, const Dims& dims, const Bipartition& cut) {
  if (cut.num_subsystems() != dims.size())
    throw std::invalid_argument("partial_transpose: cut does not match dims");
  const auto left = detail::embedded_offsets(dims, cut.left());
  const auto right = detail::embedded_offsets(dims, cut.right());
  Matrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t b = 0; b < right.size(); ++b)
      for (std::size_t a2 = 0; a2 < left.size(); ++a2)
        for (std::size_t b2 = 0; b2 < right.size(); ++b2)
          out(static_cast<Eigen::Index>(left[a] + right[b]), static_cast<Eigen::Index>(left[a2] + right[b2])) =
              m(static_cast<Eigen::Index>(left[a2] + right[b]), static_cast<Eigen::Index>(left[a] + right[b2]));
  return out;
}

inline Matrix partial_transpose(const DensityMatrix& rho, const Bipartition& cut) {
  return partial_transpose(rho.matrix(), rho.dims(), cut);
}

}  // namespace pqsm
