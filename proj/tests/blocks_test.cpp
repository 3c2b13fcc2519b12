// Copyright 2026 The sio-enhance Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sio {
namespace {

using namespace sio::testing;

const CM kPlus = mat({{0.5, 0.5}, {0.5, 0.5}});

TEST(BlockDecompose, CoherentQubitIsOneBlock) {
  const auto dec = block_decompose(qubit_state(0.8, kPi / 3));
  ASSERT_EQ(dec.blocks.size(), 1u);
  EXPECT_EQ(dec.blocks[0].dim(), 2);
  EXPECT_NEAR(dec.blocks[0].weight, 1.0, 1e-15);
  EXPECT_TRUE(dec.zero_sector.empty());
}

TEST(BlockDecompose, IncoherentSplitsIntoSingletons) {
  const auto dec = block_decompose(state(diag({0.3, 0.7})));
  ASSERT_EQ(dec.blocks.size(), 2u);
  EXPECT_DOUBLE_EQ(dec.blocks[0].weight, 0.3);
  EXPECT_DOUBLE_EQ(dec.blocks[1].weight, 0.7);
  EXPECT_EQ(dec.blocks[0].state.matrix(), diag({1}));
}

TEST(BlockDecompose, RecoversConstructedDirectSum) {
  const auto dec = block_decompose(state(direct_sum({{0.5, kPlus}, {0.5, kPlus}})));
  ASSERT_EQ(dec.blocks.size(), 2u);
  for (const auto& b : dec.blocks) {
    EXPECT_DOUBLE_EQ(b.weight, 0.5);
    EXPECT_TRUE(b.state.matrix().isApprox(kPlus, 1e-15));
  }
  EXPECT_EQ(dec.blocks[0].indices, (std::vector<Index>{0, 1}));
  EXPECT_EQ(dec.blocks[1].indices, (std::vector<Index>{2, 3}));
}

TEST(BlockDecompose, InterleavedIndicesOrderedBySmallestMember) {
  // Blocks {0, 2} and {1, 3} plus zero index 4.
  CM m = CM::Zero(5, 5);
  m(0, 0) = 0.2, m(2, 2) = 0.2, m(0, 2) = m(2, 0) = 0.1;
  m(1, 1) = 0.3, m(3, 3) = 0.3, m(1, 3) = cd(0, 0.2), m(3, 1) = cd(0, -0.2);
  const auto dec = block_decompose(state(m));
  ASSERT_EQ(dec.blocks.size(), 2u);
  EXPECT_EQ(dec.blocks[0].indices, (std::vector<Index>{0, 2}));
  EXPECT_EQ(dec.blocks[1].indices, (std::vector<Index>{1, 3}));
  EXPECT_EQ(dec.zero_sector, (std::vector<Index>{4}));
  EXPECT_EQ(dec.permutation, (std::vector<Index>{0, 2, 1, 3, 4}));
  EXPECT_TRUE(dec.reassemble().isApprox(m, 1e-15));
}

TEST(BlockDecompose, InvariantsOnScrambledRandomStates) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const Index d = 2 + static_cast<Index>(k % 5);
    const auto rho = random_block_state<double>(d, 300 + k);
    const auto dec = block_decompose(rho);

    std::vector<Index> seen = dec.permutation;
    std::sort(seen.begin(), seen.end());
    for (Index i = 0; i < d; ++i) ASSERT_EQ(seen[static_cast<std::size_t>(i)], i);

    double wsum = 0;
    for (const auto& b : dec.blocks) {
      wsum += b.weight;
      ASSERT_GT(b.weight, 0.0);
      ASSERT_TRUE(is_irreducible(b.state.matrix(), rho.tol()));
      ASSERT_NEAR(b.state.matrix().trace().real(), 1.0, 1e-12);
    }
    ASSERT_NEAR(wsum, 1.0, 1e-12);
    ASSERT_LE((dec.reassemble() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-10);
    for (Index z : dec.zero_sector) ASSERT_FALSE(rho.supported(z));
    for (std::size_t a = 1; a < dec.blocks.size(); ++a)
      ASSERT_LT(dec.blocks[a - 1].indices.front(), dec.blocks[a].indices.front());
  }
}

}  // namespace
}  // namespace sio
