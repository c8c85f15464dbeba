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
#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "pqsm/families.hpp"
#include "pqsm/measures.hpp"

namespace pqsm::families {
namespace {

bool valid_state(const DensityMatrix& rho) {
  return hermiticity_error(rho.matrix()) <= 1e-12 && std::abs(rho.matrix().trace().real() - 1.0) <= 1e-10 &&
         eigvalsh(rho.matrix()).minCoeff() >= -1e-9;
}

TEST(PhiPlus, Fixtures) {
  const PureState psi = phi_plus();
  EXPECT_NEAR(psi.amplitudes().norm(), 1.0, 1e-15);
  const auto rho = DensityMatrix::from_pure(psi);
  for (std::size_t keep : {0u, 1u})
    EXPECT_LE(max_abs(partial_trace(rho, {keep}).matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
  EXPECT_LE(max_abs(partial_trace(rho, {0}).matrix() - testing::naive_trace_second_qubit(rho.matrix())), 1e-15);
  EXPECT_NEAR(log_negativity(rho, Bipartition({0}, 2)), 1.0, 1e-12);
}

TEST(SepNoMerge, Structure) {
  for (std::uint64_t seed : {0u, 1u, 7u, 12345u}) {
    const auto family = sep_no_merge_components(seed);
    const auto& s = family.state;
    EXPECT_EQ(s.dims(), (Dims{15, 2, 2}));
    EXPECT_TRUE(valid_state(s.state()));
    EXPECT_EQ(bloch::rank_of_family(std::span<const DensityMatrix>(family.blocks)), 15u);
    double total = 0.0;
    for (double p : family.weights) {
      EXPECT_GE(p, kSepWeightFloor);
      total += p;
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    for (const auto& block : family.blocks) EXPECT_TRUE(is_ppt(block, Bipartition({0}, 2)));
    EXPECT_TRUE(is_ppt(s.state(), s.ab_vs_c()));
    EXPECT_TRUE(is_ppt(s.state(), s.a_vs_bc()));
    EXPECT_GT(conditional_entropy(s), 0.0);
  }
}

TEST(SepNoMerge, DeterministicInSeed) {
  EXPECT_EQ(sep_no_merge_family(3).state().matrix(), sep_no_merge_family(3).state().matrix());
  EXPECT_GT(trace_distance(sep_no_merge_family(3).state(), sep_no_merge_family(4).state()), 0.0);
}

TEST(ProductExample, Fixtures) {
  const auto product = product_example(tensor(ket0(), ket0()));
  EXPECT_NEAR(product.state().matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(product.state().purity(), 1.0, 1e-15);
  const auto ent = product_example(phi_plus());
  EXPECT_EQ(ent.dims(), (Dims{2, 2, 2}));
  EXPECT_NEAR(conditional_entropy(ent), 1.0, 1e-12);
  EXPECT_TRUE(is_ppt(ent.state(), ent.ab_vs_c()));
  EXPECT_THROW(product_example(ket0()), std::invalid_argument);
}

TEST(RobustVanishing, Fixtures) {
  const auto s = robust_vanishing_family(0.1);
  EXPECT_TRUE(valid_state(s.state()));
  EXPECT_TRUE(is_ppt(s.state(), s.ab_vs_c()));
  const double h = hashing_witness(s.state(), s.a_vs_bc()).value;
  EXPECT_GT(h, 0.0);
  EXPECT_NEAR(h, testing::kRobustHashingAtTenth, 1e-10);
  EXPECT_THROW(robust_vanishing_family(0.0), std::invalid_argument);
  EXPECT_THROW(robust_vanishing_family(1.0), std::invalid_argument);
}

TEST(RobustVanishing, SmallPLimit) {
  const auto limit = product_example(phi_plus());
  for (double p : {1e-6, 1e-3, 0.05, 0.3}) {
    EXPECT_LE(trace_distance(robust_vanishing_family(p).state(), limit.state()), p + 1e-12);
  }
}

TEST(RobustVanishing, PptForSampledP) {
  Rng rng(51);
  std::uniform_real_distribution<double> u(1e-6, 1.0 - 1e-6);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto s = robust_vanishing_family(u(rng));
    ASSERT_TRUE(is_ppt(s.state(), s.ab_vs_c(), 1e-10));
  }
}

TEST(RobustVanishing, Threshold) {
  const double p_max = robust_vanishing_threshold();
  EXPECT_NEAR(p_max, testing::kRobustThreshold, 1e-9);
  auto hashing_at = [](double p) {
    const auto s = robust_vanishing_family(p);
    return hashing_witness(s.state(), s.a_vs_bc()).value;
  };
  EXPECT_GT(hashing_at(p_max - 1e-6), 0.0);
  EXPECT_LT(hashing_at(p_max + 1e-6), 0.0);
}

TEST(Perturb, Endpoints) {
  Rng rng(52);
  const auto rho = robust_vanishing_family(0.2);
  const auto sigma = TripartiteState::consecutive(random_density_matrix({2, 2, 2}, rng));
  EXPECT_EQ(perturb(rho, sigma, 0.0).state().matrix(), rho.state().matrix());
  EXPECT_EQ(perturb(rho, sigma, 1.0).state().matrix(), sigma.state().matrix());
  EXPECT_THROW(perturb(rho, sigma, 1.5), std::invalid_argument);
  EXPECT_THROW(perturb(rho, sep_no_merge_family(1), 0.1), std::invalid_argument);
}

TEST(Perturb, TraceDistanceBound) {
  Rng rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = TripartiteState::consecutive(random_density_matrix({2, 2, 2}, rng));
    const auto sigma = TripartiteState::consecutive(random_density_matrix({2, 2, 2}, rng));
    const double eps = u(rng);
    EXPECT_LE(trace_distance(perturb(rho, sigma, eps).state(), rho.state()), eps + 1e-12);
  }
}

TEST(Perturb, SepFamilyKeepsPpt) {
  Rng rng(54);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = sep_no_merge_family(seed);
    for (int k = 0; k < 5; ++k) {
      const auto sigma = TripartiteState::consecutive(testing::random_fully_separable({15, 2, 2}, rng));
      const auto mixed = perturb(rho, sigma, 1e-3);
      EXPECT_TRUE(is_ppt(mixed.state(), mixed.ab_vs_c()));
    }
  }
}

TEST(Fixtures, Ghz) {
  const auto s = ghz();
  EXPECT_NEAR(conditional_entropy(s), 0.0, 1e-12);
  EXPECT_NEAR(s.state().purity(), 1.0, 1e-12);
}

TEST(Fixtures, ClassicalCorrelated) {
  const auto s = classical_correlated();
  EXPECT_NEAR(mutual_information(s.state(), s.a_vs_bc()), 1.0, 1e-12);
  EXPECT_TRUE(is_ppt(s.state(), s.a_vs_bc()));
}

TEST(Fixtures, ProductPureMeasuresVanish) {
  const auto s = product_pure(ket0(), ket_plus(), ket1());
  for (const auto& cut : {s.a_vs_bc(), s.ab_vs_c(), Bipartition({1}, 3)}) {
    EXPECT_NEAR(mutual_information(s.state(), cut), 0.0, 1e-12);
    EXPECT_NEAR(log_negativity(s.state(), cut), 0.0, 1e-12);
    EXPECT_NEAR(hashing_witness(s.state(), cut).value, 0.0, 1e-12);
  }
  EXPECT_NEAR(conditional_entropy(s), 0.0, 1e-12);
}

TEST(Fixtures, LocalAEntangledBc) {
  EXPECT_NEAR(conditional_entropy(local_a_entangled_bc()), -1.0, 1e-12);
}

TEST(Fixtures, AllConstructorsAreValidStates) {
  for (const auto& s : {sep_no_merge_family(0), product_example(phi_plus()), robust_vanishing_family(0.5), ghz(),
                        classical_correlated(), product_pure(ket0(), ket1(), ket_plus()), local_a_entangled_bc()})
    EXPECT_TRUE(valid_state(s.state()));
}

}  // namespace
}  // namespace pqsm::families
