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

KrausSet<double> set_of(std::initializer_list<CM> ms) {
  std::vector<KrausOperator<double>> ops;
  for (const auto& m : ms) ops.emplace_back(m);
  return KrausSet<double>(std::move(ops));
}

// Optimal qubit operator written from the closed form, with U_in = I:
// sqrt(1 - r|cos t|) diag(1/sqrt(1 + r cos t), 1/sqrt(1 - r cos t)).
CM qubit_optimal(double r, double t) {
  const double c = r * std::cos(t);
  return std::sqrt(1 - std::abs(c)) * diag({1 / std::sqrt(1 + c), 1 / std::sqrt(1 - c)});
}

TEST(StrictlyIncoherent, Examples) {
  EXPECT_TRUE(is_strictly_incoherent(KrausOperator<double>(diag({cd(0.3, 0.1), cd(0, -1), 0.2}))));
  EXPECT_TRUE(is_strictly_incoherent(KrausOperator<double>(mat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}))));
  EXPECT_FALSE(is_strictly_incoherent(KrausOperator<double>(mat({{1, 1}, {0, 0}}) / std::sqrt(2.0))));
  EXPECT_FALSE(is_strictly_incoherent(KrausOperator<double>(mat({{1, 0}, {1, 0}}))));
  EXPECT_TRUE(is_strictly_incoherent(KrausOperator<double>(CM::Zero(3, 3))));
}

TEST(StrictlyIncoherent, EntriesAtOrBelowTolAreIgnored) {
  const KrausOperator<double> k(mat({{1, 1e-12}, {0, 1}}));
  EXPECT_TRUE(is_strictly_incoherent(k));
  EXPECT_FALSE(is_strictly_incoherent(k, 1e-13));
}

TEST(KrausSet, RejectsBadSets) {
  try {
    set_of({CM::Identity(2, 2), CM::Identity(2, 2) * 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSubnormalized);
  }
  try {
    set_of({CM::Identity(2, 2) * 0.5, CM::Identity(3, 3) * 0.5});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  EXPECT_THROW(KrausOperator<double>(CM::Zero(2, 3)), Error);
}

TEST(ApplySelective, IdentityChannel) {
  const auto rho = random_density<double>(3, 2, 7);
  const auto out = apply_selective(rho, set_of({CM::Identity(3, 3)}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].probability, 1.0, 1e-15);
  EXPECT_TRUE(out[0].state.matrix().isApprox(rho.matrix(), 1e-14));
}

TEST(ApplySelective, ProjectiveDephasing) {
  const auto out = apply_selective(state(diag({0.5, 0.5})), set_of({diag({1, 0}), diag({0, 1})}));
  ASSERT_EQ(out.size(), 2u);
  EXPECT_DOUBLE_EQ(out[0].probability, 0.5);
  EXPECT_DOUBLE_EQ(out[1].probability, 0.5);
  EXPECT_EQ(out[0].state.matrix(), diag({1, 0}));
  EXPECT_EQ(out[1].state.matrix(), diag({0, 1}));
}

TEST(ApplySelective, ZeroProbabilityOutcomesAreOmitted) {
  const auto out = apply_selective(state(diag({1, 0})), set_of({diag({1, 0}), diag({0, 1})}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].index, 0u);
}

TEST(ApplySelective, QubitOptimalOperator) {
  const double r = 0.8, t = kPi / 3;
  const auto out = apply_selective(qubit_state(r, t, 0.4), set_of({qubit_optimal(r, t)}));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_NEAR(out[0].probability, 1 - r * std::abs(std::cos(t)), 1e-14);
  EXPECT_NEAR(l1_coherence(out[0].state), r * std::sin(t) / std::sqrt(1 - r * r * std::cos(t) * std::cos(t)), 1e-14);
}

TEST(ApplySelective, DimensionMismatch) {
  try {
    apply_selective(state(diag({0.5, 0.5})), set_of({CM::Identity(3, 3)}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
}

TEST(ApplyStochastic, Examples) {
  const auto rho = random_density<double>(3, 3, 11);
  const auto id = apply_stochastic(rho, set_of({CM::Identity(3, 3)}));
  EXPECT_NEAR(id.probability, 1.0, 1e-15);
  EXPECT_TRUE(id.state.matrix().isApprox(rho.matrix(), 1e-14));

  const auto deph = apply_stochastic(rho, set_of({diag({1, 0, 0}), diag({0, 1, 0}), diag({0, 0, 1})}));
  EXPECT_NEAR(deph.probability, 1.0, 1e-14);
  EXPECT_TRUE(deph.state.matrix().isApprox(dephase(rho), 1e-14));

  const auto q = apply_stochastic(qubit_state(0.8, kPi / 3), set_of({qubit_optimal(0.8, kPi / 3)}));
  EXPECT_NEAR(q.probability, 0.6, 1e-14);
  EXPECT_NEAR(l1_coherence(q.state), 0.75592894601845, 1e-13);
}

TEST(ApplyStochastic, ZeroProbability) {
  try {
    apply_stochastic(state(diag({1, 0})), set_of({diag({0, 1})}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroProbability);
  }
}

TEST(CompleteInstrument, Examples) {
  const auto a = complete_instrument(set_of({CM::Identity(2, 2)}));
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[1].matrix(), CM::Zero(2, 2));

  const auto b = complete_instrument(set_of({diag({std::sqrt(0.6), std::sqrt(0.6)})}));
  EXPECT_TRUE(b[1].matrix().isApprox(diag({std::sqrt(0.4), std::sqrt(0.4)}), 1e-15));

  const auto c = complete_instrument(set_of({qubit_optimal(0.8, kPi / 3)}));
  const CM f = c[1].matrix();
  EXPECT_TRUE(is_strictly_incoherent(c[1]));
  EXPECT_EQ(f(0, 1), cd(0));
  EXPECT_EQ(f(1, 0), cd(0));
  // I - K'^dagger K' = diag(1 - 0.6/1.4, 1 - 0.6/0.6) = diag(4/7, 0).
  EXPECT_NEAR((f.adjoint() * f)(0, 0).real(), 4.0 / 7.0, 1e-15);
  EXPECT_NEAR((f.adjoint() * f)(1, 1).real(), 0.0, 1e-15);
  EXPECT_LE(completeness_defect(c), 1e-15);
}

TEST(CompleteInstrument, NonDiagonalDeficit) {
  const CM k = mat({{0.5, 0.5}, {0, 0}});
  const auto c = complete_instrument(set_of({k}));
  EXPECT_LE(completeness_defect(c), 1e-14);
  EXPECT_TRUE(c[1].matrix().isApprox(c[1].matrix().adjoint()));
}

// Monotonicity of l1 coherence under complete strictly incoherent instruments,
// and the mixing bound for stochastic sub-channels.
TEST(SioProperties, MonotonicityAndMixing) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const Index d = 2 + static_cast<Index>(k % 5);
    const auto rho = random_density<double>(d, 1 + static_cast<Index>(k % d), 5000 + k);
    const auto ks = random_sio_instrument<double>(d, 1 + k % 4, 9000 + k);
    ASSERT_TRUE(ks.strictly_incoherent());
    ASSERT_LE(completeness_defect(ks), 1e-12);
    const double c0 = l1_coherence(rho);

    const auto det = apply_stochastic(rho, ks);
    EXPECT_NEAR(det.probability, 1.0, 1e-12);
    EXPECT_LE(l1_coherence(det.state), c0 + 1e-9);

    const auto sel = apply_selective(rho, ks);
    double avg = 0, psum = 0, cmax_branch = 0;
    for (const auto& o : sel) {
      avg += o.probability * l1_coherence(o.state);
      psum += o.probability;
      cmax_branch = std::max(cmax_branch, l1_coherence(o.state));
    }
    EXPECT_LE(avg, c0 + 1e-9);
    EXPECT_NEAR(psum, det.probability, 1e-9);
    EXPECT_LE(l1_coherence(det.state), cmax_branch + 1e-9);

    // Stochastic sub-channel from the leading operators.
    if (ks.size() > 1) {
      std::vector<KrausOperator<double>> sub(ks.operators().begin(), ks.operators().end() - 1);
      const KrausSet<double> subset(sub);
      const auto sel_sub = apply_selective(rho, subset);
      if (sel_sub.empty()) continue;
      const auto st = apply_stochastic(rho, subset);
      double ps = 0, cm = 0;
      for (const auto& o : sel_sub) ps += o.probability, cm = std::max(cm, l1_coherence(o.state));
      EXPECT_NEAR(st.probability, ps, 1e-9);
      EXPECT_LE(l1_coherence(st.state), cm + 1e-9);
    }
  }
}

}  // namespace
}  // namespace sio
