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

/// @file ppt_opt.hpp
/// Optimization over the set of PPT states
///
///   PPT(cut) = { sigma : sigma >= 0, sigma^{T_cut} >= 0, Tr sigma = 1 }.
///
/// Both constraint sets {X >= 0, Tr X = 1} and {X^{T} >= 0, Tr X = 1} have
/// closed-form Frobenius projections (project the spectrum onto the simplex;
/// the partial transpose is an isometry), so the projection onto their
/// intersection is computed with Dykstra's algorithm. On top of that:
///
///  - max_overlap_ppt: projected ascent of <psi|sigma|psi>, with a
///    level-set bisection fallback when ascent does not converge;
///  - min_trace_distance_ppt: projected subgradient descent of T(rho, sigma);
///  - geometric_distillability_ppt: 1 - F over the PPT set.
///
/// Every returned certificate is repaired to exact feasibility by mixing with
/// the maximally mixed state, so reported values are achieved by a PPT state.
/// Since PPT states are never distillable, these values are one-sided
/// surrogates for the same quantities taken over all nondistillable states.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pqsm/core.hpp"
#include "pqsm/measures.hpp"

namespace pqsm::ppt {

inline constexpr std::size_t kOptimizationDimensionCap = 64;

enum class StepRule { kFixed, kDiminishing };

struct PptOptConfig {
  int max_iters = 5000;
  double tol = 1e-7;
  StepRule step_rule = StepRule::kFixed;
  int bisection_depth = 40;
  double step = 10.0;               // initial ascent/descent step
  int inner_max_iters = 20000;      // Dykstra iteration cap per projection
  std::size_t dimension_cap = kOptimizationDimensionCap;

  void validate() const {
    if (!(tol > 0.0)) throw std::invalid_argument("PptOptConfig: tol must be positive");
    if (max_iters < 1) throw std::invalid_argument("PptOptConfig: max_iters must be >= 1");
    if (inner_max_iters < 1) throw std::invalid_argument("PptOptConfig: inner_max_iters must be >= 1");
    if (bisection_depth < 0) throw std::invalid_argument("PptOptConfig: bisection_depth must be >= 0");
    if (!(step > 0.0)) throw std::invalid_argument("PptOptConfig: step must be positive");
  }
};

struct Residuals {
  double min_eigenvalue = 0.0;
  double min_pt_eigenvalue = 0.0;
  double trace_error = 0.0;
};

struct PptOptResult {
  double value = 0.0;
  DensityMatrix certificate;
  int iterations = 0;
  bool converged = false;
  Residuals residuals;
  bool used_bisection = false;
  std::vector<double> history;  // objective per outer iteration
};

// ---------------------------------------------------------------------------
// projections

/// Euclidean projection of a real vector onto the probability simplex.
inline RealVector project_simplex(const RealVector& v) {
  std::vector<double> sorted(v.data(), v.data() + v.size());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double running = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    running += sorted[i];
    const double t = (running - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  return (v.array() - theta).max(0.0).matrix();
}

/// Nearest unit-trace PSD matrix in Frobenius norm.
inline Matrix project_density(const Matrix& h) {
  auto [values, vectors] = eigh(hermitian_part(h));
  const RealVector w = project_simplex(values);
  return vectors * w.cast<cplx>().asDiagonal() * vectors.adjoint();
}

/// Nearest unit-trace matrix with PSD partial transpose.
inline Matrix project_pt_density(const Matrix& h, const Dims& dims, const Bipartition& cut) {
  return partial_transpose(project_density(partial_transpose(h, dims, cut)), dims, cut);
}

struct DykstraOutcome {
  Matrix point;  // last iterate of the PSD projection
  int iterations = 0;
  bool converged = false;
};

/// Dykstra's alternating projections onto {X >= 0, Tr X = 1} and
/// {X^{T_cut} >= 0, Tr X = 1}, started at `m`.
inline DykstraOutcome dykstra_ppt(const Matrix& m, const Dims& dims, const Bipartition& cut, double tol,
                                  int max_iters) {
  const auto n = m.rows();
  Matrix x = hermitian_part(m);
  Matrix p = Matrix::Zero(n, n), q = Matrix::Zero(n, n);
  DykstraOutcome out;
  for (int it = 1; it <= max_iters; ++it) {
    Matrix y = project_density(x + p);
    p = x + p - y;
    Matrix next = project_pt_density(y + q, dims, cut);
    q = y + q - next;
    const double gap = (y - next).norm();
    const double moved = (next - x).norm();
    x = std::move(next);
    out.point = std::move(y);
    out.iterations = it;
    if (gap <= tol && moved <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

/// Mixes `sigma` with I/D just enough to make it and its partial transpose
/// positive semidefinite.
inline Matrix repair_to_ppt(const Matrix& sigma, const Dims& dims, const Bipartition& cut) {
  const auto n = sigma.rows();
  Matrix s = hermitian_part(sigma);
  s /= s.trace().real();
  const double deficit =
      std::max({0.0, -eigvalsh(s).minCoeff(), -eigvalsh(partial_transpose(s, dims, cut)).minCoeff()});
  if (deficit == 0.0) return s;
  const double inv_d = 1.0 / static_cast<double>(n);
  const double lambda = deficit / (deficit + inv_d);
  return (1.0 - lambda) * s + lambda * inv_d * Matrix::Identity(n, n);
}

inline Residuals residuals_of(const DensityMatrix& sigma, const Bipartition& cut) {
  return {eigvalsh(sigma.matrix()).minCoeff(), min_partial_transpose_eigenvalue(sigma, cut),
          std::abs(sigma.matrix().trace().real() - 1.0)};
}

namespace detail {

inline void check_optimization_size(const Dims& dims, const Bipartition& cut, const PptOptConfig& config) {
  config.validate();
  total_dimension(dims, config.dimension_cap);
  if (cut.num_subsystems() != dims.size()) throw std::invalid_argument("ppt: cut does not match dims");
}

inline double overlap(const Vector& psi, const Matrix& sigma) { return (psi.adjoint() * sigma * psi)(0).real(); }

inline DensityMatrix certificate_from(const Matrix& sigma, const Dims& dims, const Bipartition& cut) {
  return DensityMatrix(dims, hermitian_part(repair_to_ppt(sigma, dims, cut)));
}

}  // namespace detail

/// Nearest PPT state to the Hermitian matrix `m` (Frobenius norm).
/// `value` is the Frobenius distance from `m` to the returned state.
inline PptOptResult project_ppt_state(const Matrix& m, const Dims& dims, const Bipartition& cut,
                                      const PptOptConfig& config = {}) {
  detail::check_optimization_size(dims, cut, config);
  if (m.rows() != static_cast<Eigen::Index>(total_dimension(dims)) || m.rows() != m.cols())
    throw std::invalid_argument("project_ppt_state: matrix size does not match dims");
  if (hermiticity_error(m) > tolerance::kEighHermitian * std::max(1.0, max_abs(m)))
    throw std::invalid_argument("project_ppt_state: input is not Hermitian");
  const DykstraOutcome d = dykstra_ppt(m, dims, cut, config.tol, config.inner_max_iters);
  DensityMatrix cert = detail::certificate_from(d.point, dims, cut);
  const double dist = (cert.matrix() - m).norm();
  Residuals res = residuals_of(cert, cut);
  return {dist, std::move(cert), d.iterations, d.converged, res, false, {dist}};
}

namespace detail {

/// Cyclic Dykstra over the two PPT cones and the half-space
/// {X : <psi|X|psi> >= level}. Returns the certified overlap of the repaired
/// end point, which is >= level - tol when the level set is reachable.
inline double level_set_probe(const Vector& psi, double level, const Matrix& start, const Dims& dims,
                              const Bipartition& cut, double tol, int max_iters, Matrix& best) {
  const auto n = start.rows();
  const Matrix target = psi * psi.adjoint();
  Matrix x = start;
  Matrix c1 = Matrix::Zero(n, n), c2 = Matrix::Zero(n, n), c3 = Matrix::Zero(n, n);
  for (int it = 0; it < max_iters; ++it) {
    Matrix y1 = project_density(x + c1);
    c1 = x + c1 - y1;
    Matrix y2 = project_pt_density(y1 + c2, dims, cut);
    c2 = y1 + c2 - y2;
    Matrix z = y2 + c3;
    const double shortfall = level - overlap(psi, z);
    Matrix y3 = shortfall > 0.0 ? Matrix(z + shortfall * target) : z;
    c3 = z - y3;
    const double moved = (y3 - x).norm();
    x = std::move(y3);
    if (moved <= tol && (y1 - y2).norm() <= tol) break;
  }
  best = repair_to_ppt(project_density(x), dims, cut);
  return overlap(psi, best);
}

}  // namespace detail

/// max <psi|sigma|psi> over PPT states sigma across `cut`. The returned value
/// is always achieved by the (exactly feasible) certificate, so it is a valid
/// lower bound on the true maximum even when `converged` is false.
inline PptOptResult max_overlap_ppt(const PureState& psi, const Bipartition& cut, const PptOptConfig& config = {}) {
  const Dims& dims = psi.dims();
  detail::check_optimization_size(dims, cut, config);
  const Vector& v = psi.amplitudes();
  const Matrix target = psi.projector();
  const auto n = target.rows();

  Matrix sigma = Matrix::Identity(n, n) / static_cast<double>(n);
  double value = detail::overlap(v, sigma);
  PptOptResult result{value, DensityMatrix(dims, sigma), 0, false, {}, false, {value}};

  for (int k = 0; k < config.max_iters; ++k) {
    const double eta =
        config.step_rule == StepRule::kFixed ? config.step : config.step / std::sqrt(static_cast<double>(k + 1));
    const DykstraOutcome d = dykstra_ppt(sigma + eta * target, dims, cut, 0.1 * config.tol, config.inner_max_iters);
    const double moved = (d.point - sigma).norm();
    sigma = d.point;
    value = detail::overlap(v, sigma);
    result.history.push_back(value);
    result.iterations = k + 1;
    if (moved <= config.tol && d.converged) {
      result.converged = true;
      break;
    }
  }

  Matrix cert = repair_to_ppt(sigma, dims, cut);
  double certified = detail::overlap(v, cert);

  if (!result.converged && config.bisection_depth > 0) {
    // Level-set bisection between the certified value and 1.
    result.used_bisection = true;
    double lo = certified, hi = 1.0;
    for (int depth = 0; depth < config.bisection_depth && hi - lo > config.tol; ++depth) {
      const double level = 0.5 * (lo + hi);
      Matrix candidate;
      const double reached =
          detail::level_set_probe(v, level, cert, dims, cut, config.tol, config.inner_max_iters, candidate);
      if (reached >= level - 10.0 * config.tol) {
        if (reached > certified) {
          certified = reached;
          cert = candidate;
        }
        lo = std::max(level, reached);
      } else {
        hi = level;
      }
    }
    result.converged = hi - lo <= std::max(config.tol, 1e-6);
  }

  result.certificate = DensityMatrix(dims, hermitian_part(cert));
  result.value = detail::overlap(v, result.certificate.matrix());
  result.residuals = residuals_of(result.certificate, cut);
  return result;
}

/// min T(rho, sigma) over PPT states sigma across `cut`, by projected
/// subgradient descent started at the Frobenius projection of rho. The
/// value is achieved by the certificate, hence an upper bound on the true
/// minimum; the descent targets 1e-3 accuracy.
inline PptOptResult min_trace_distance_ppt(const DensityMatrix& rho, const Bipartition& cut,
                                           const PptOptConfig& config = {}) {
  const Dims& dims = rho.dims();
  detail::check_optimization_size(dims, cut, config);
  const Matrix& r = rho.matrix();

  auto distance = [&](const Matrix& s) { return 0.5 * trace_norm(hermitian_part(r - s)); };

  DykstraOutcome start = dykstra_ppt(r, dims, cut, config.tol, config.inner_max_iters);
  Matrix sigma = start.point;
  Matrix best = repair_to_ppt(sigma, dims, cut);
  double best_value = distance(best);
  PptOptResult result{best_value, DensityMatrix(dims, hermitian_part(best)), 0, false, {}, false, {best_value}};

  // Fixed rule: constant step, halved and restarted from the best point
  // after a stall. Diminishing rule: step / sqrt(k + 1).
  double eta = 0.1 * std::min(config.step, 1.0);
  int since_improvement = 0;
  constexpr int kStall = 25;
  for (int k = 0; k < config.max_iters && best_value > config.tol; ++k) {
    auto [values, vectors] = eigh(hermitian_part(sigma - r));
    const RealVector signs = values.unaryExpr([](double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); });
    const Matrix subgradient = vectors * signs.cast<cplx>().asDiagonal() * vectors.adjoint();
    const double step =
        config.step_rule == StepRule::kFixed ? eta : eta / std::sqrt(static_cast<double>(k + 1));
    const DykstraOutcome d = dykstra_ppt(sigma - step * subgradient, dims, cut, config.tol, config.inner_max_iters);
    sigma = d.point;
    const Matrix candidate = repair_to_ppt(sigma, dims, cut);
    const double value = distance(candidate);
    result.history.push_back(value);
    result.iterations = k + 1;
    if (value < best_value - config.tol) {
      best_value = value;
      best = candidate;
      since_improvement = 0;
      continue;
    }
    if (++since_improvement < kStall) continue;
    since_improvement = 0;
    if (config.step_rule == StepRule::kDiminishing) {
      result.converged = true;
      break;
    }
    eta *= 0.5;
    sigma = best;
    if (eta < config.tol) {
      result.converged = true;
      break;
    }
  }
  if (best_value <= config.tol) result.converged = true;
  result.certificate = DensityMatrix(dims, hermitian_part(best));
  result.value = trace_distance(rho, result.certificate);
  result.residuals = residuals_of(result.certificate, cut);
  return result;
}

/// Result of geometric_distillability_ppt. For pure inputs the interval is
/// degenerate (lower == upper).
struct GeometricDistillability {
  double lower = 0.0;
  double upper = 0.0;
  bool exact = false;  // true for pure inputs
  PptOptResult optimization;

  double value() const { return 0.5 * (lower + upper); }
};

/// 1 - max F(rho, sigma) over PPT states sigma. Pure inputs use the overlap
/// maximization directly; mixed inputs get the interval
/// [1 - sqrt(1 - T^2), T] from the PPT trace distance T.
inline GeometricDistillability geometric_distillability_ppt(const DensityMatrix& rho, const Bipartition& cut,
                                                            const PptOptConfig& config = {}) {
  const Matrix& m = rho.matrix();
  if (rho.purity() >= 1.0 - 1e-9) {
    auto [values, vectors] = eigh(m);
    const Vector top = vectors.col(values.size() - 1);
    PptOptResult opt = max_overlap_ppt(PureState::normalized(rho.dims(), top), cut, config);
    const double d = std::clamp(1.0 - std::sqrt(std::max(opt.value, 0.0)), 0.0, 1.0);
    return {d, d, true, std::move(opt)};
  }
  PptOptResult opt = min_trace_distance_ppt(rho, cut, config);
  const double t = std::clamp(opt.value, 0.0, 1.0);
  return {1.0 - std::sqrt(1.0 - t * t), t, false, std::move(opt)};
}

}  // namespace pqsm::ppt
