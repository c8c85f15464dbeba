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

#include <stdexcept>
#include <utility>

#include "pqsm/core.hpp"

namespace pqsm {

/// A density matrix whose subsystems are assigned to Alice, Bob and Charlie.
/// Extra registers on Charlie's side are just additional C indices.
class TripartiteState {
 public:
  TripartiteState(DensityMatrix state, IndexSet a, IndexSet b, IndexSet c) : state_(std::move(state)) {
    const std::size_t n = state_.num_subsystems();
    a_ = detail::normalized_index_set(std::move(a), n, "tripartite A");
    b_ = detail::normalized_index_set(std::move(b), n, "tripartite B");
    c_ = detail::normalized_index_set(std::move(c), n, "tripartite C");
    if (a_.empty() || b_.empty() || c_.empty())
      throw std::invalid_argument("tripartite: every party needs at least one subsystem");
    IndexSet all = a_;
    all.insert(all.end(), b_.begin(), b_.end());
    all.insert(all.end(), c_.begin(), c_.end());
    std::sort(all.begin(), all.end());
    IndexSet expected(n);
    std::iota(expected.begin(), expected.end(), std::size_t{0});
    if (all != expected) throw std::invalid_argument("tripartite: index sets must partition the subsystems");
  }

  /// Subsystems listed in A, B, C order: one subsystem per party.
  static TripartiteState consecutive(DensityMatrix state) {
    if (state.num_subsystems() != 3) throw std::invalid_argument("tripartite: expected exactly three subsystems");
    return TripartiteState(std::move(state), {0}, {1}, {2});
  }

  const DensityMatrix& state() const { return state_; }
  const Dims& dims() const { return state_.dims(); }
  const IndexSet& a() const { return a_; }
  const IndexSet& b() const { return b_; }
  const IndexSet& c() const { return c_; }

  IndexSet bc() const { return merged(b_, c_); }
  IndexSet ab() const { return merged(a_, b_); }
  IndexSet ac() const { return merged(a_, c_); }

  /// A:BC
  Bipartition a_vs_bc() const { return Bipartition(a_, state_.num_subsystems()); }
  /// AB:C
  Bipartition ab_vs_c() const { return Bipartition(ab(), state_.num_subsystems()); }
  /// A:C after tracing out B, expressed on the reduced AC state.
  Bipartition a_vs_c_reduced() const;

 private:
  static IndexSet merged(const IndexSet& x, const IndexSet& y) {
    IndexSet out = x;
    out.insert(out.end(), y.begin(), y.end());
    std::sort(out.begin(), out.end());
    return out;
  }

  DensityMatrix state_;
  IndexSet a_, b_, c_;
};

inline Bipartition TripartiteState::a_vs_c_reduced() const {
  const IndexSet kept = ac();
  IndexSet left;
  for (std::size_t pos = 0; pos < kept.size(); ++pos)
    if (std::find(a_.begin(), a_.end(), kept[pos]) != a_.end()) left.push_back(pos);
  return Bipartition(left, kept.size());
}

}  // namespace pqsm
