// Copyright 2026 The qcerase Authors
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

#include "qcerase/interference.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qcerase {
namespace {

TEST(ScreenGrid, Validation) {
  EXPECT_THROW(ScreenGrid(1.0, 1.0, 10), std::invalid_argument);
  EXPECT_THROW(ScreenGrid(0.0, 1.0, 1), std::invalid_argument);
  const ScreenGrid g(-1.0, 1.0, 5);
  EXPECT_DOUBLE_EQ(g.spacing(), 0.5);
  EXPECT_DOUBLE_EQ(g.x(0), -1.0);
  EXPECT_DOUBLE_EQ(g.x(4), 1.0);
}

TEST(Integrate, TrapezoidIsExactForLinear) {
  const ScreenGrid g(0.0, 2.0, 11);
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] = 3.0 * g.x(i) + 1.0;
  EXPECT_NEAR(integrate(g, f), 8.0, 1e-14);
}

TEST(GaussianTwoSlit, Errors) {
  const ScreenGrid g(-10, 10, 256);
  EXPECT_THROW(gaussian_two_slit(g, 4.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(gaussian_two_slit(g, 4.0, -1.0, 1.0), std::invalid_argument);
}

TEST(GaussianTwoSlit, CoincidentSlitsAreEqual) {
  const SlitWavePair pair = gaussian_two_slit(ScreenGrid(-10, 10, 512), 0.0, 1.0, 0.0);
  for (std::size_t i = 0; i < pair.grid().size(); ++i)
    EXPECT_NEAR(std::abs(pair.psi1()[i] - pair.psi2()[i]), 0.0, 1e-15);
}

TEST(GaussianTwoSlit, SeparatedSlitsAreOrthogonal) {
  const SlitWavePair pair = gaussian_two_slit(ScreenGrid(-20, 20, 2048), 16.0, 0.5, 0.0);
  EXPECT_LT(std::abs(pair.overlap()), 1e-12);
}

TEST(GaussianTwoSlit, EachWaveNormalized) {
  for (double w : {0.3, 1.0, 1.5}) {
    const SlitWavePair pair = gaussian_two_slit(ScreenGrid(-10, 10, 2048), 4.0, w, 3.0);
    EXPECT_NEAR(grid_inner(pair.grid(), pair.psi1(), pair.psi1()).real(), 1.0, 1e-8);
    EXPECT_NEAR(grid_inner(pair.grid(), pair.psi2(), pair.psi2()).real(), 1.0, 1e-8);
  }
}

TEST(GaussianTwoSlit, DensityWidthMatchesStd) {
  const SlitWavePair pair = gaussian_two_slit(ScreenGrid(-20, 20, 4096), 4.0, 1.5, 6.0);
  const auto dens = abs_squared(pair.psi2());
  std::vector<double> m2(dens.size());
  for (std::size_t i = 0; i < dens.size(); ++i) {
    const double d = pair.grid().x(i) - 2.0;
    m2[i] = d * d * dens[i];
  }
  EXPECT_NEAR(std::sqrt(integrate(pair.grid(), m2)), 1.5, 1e-8);
}

TEST(SlitWavePair, RejectsBadInputs) {
  const ScreenGrid g(-1, 1, 3);
  EXPECT_THROW(SlitWavePair(g, {1.0, 1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
  EXPECT_THROW(SlitWavePair(g, {2.0, 2.0, 2.0}, {1.0, 1.0, 1.0}), std::invalid_argument);
}

TEST(Superpose, OrthogonalPlusNeedsNoRenormalization) {
  const SlitWavePair pair = GaussianPreset{}.make();
  ASSERT_LT(std::abs(pair.overlap()), 1e-10);
  const SampledWave plus = superpose(pair, Sign::Plus);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < pair.grid().size(); i += 97)
    EXPECT_NEAR(std::abs(plus.amps[i] - h * (pair.psi1()[i] + pair.psi2()[i])), 0.0, 1e-12);
}

TEST(Superpose, EqualWavesPlusGivesTheWave) {
  const SlitWavePair pair = gaussian_two_slit(ScreenGrid(-10, 10, 512), 0.0, 1.0, 0.0);
  const SampledWave plus = superpose(pair, Sign::Plus);
  for (std::size_t i = 0; i < pair.grid().size(); ++i)
    EXPECT_NEAR(std::abs(plus.amps[i] - pair.psi1()[i]), 0.0, 1e-12);
  EXPECT_THROW(superpose(pair, Sign::Minus), std::domain_error);
}

TEST(Superpose, MinusThenPlusRegeneratesFirstSlit) {
  const SlitWavePair pair = GaussianPreset{}.make();
  const SampledWave plus = superpose(pair, Sign::Plus);
  const SampledWave minus = superpose(pair, Sign::Minus);
  const SlitWavePair rotated(pair.grid(), plus.amps, minus.amps);
  const SampledWave back = superpose(rotated, Sign::Plus);
  EXPECT_NEAR(std::abs(grid_inner(pair.grid(), back.amps, pair.psi1())), 1.0, 1e-12);
}

TEST(Patterns, PointExtremes) {
  // Constant waves on [0, 1] are trapezoid-normalized.
  const ScreenGrid g(0, 1, 2);
  const double c = 1.0;
  const SlitWavePair same(g, {c, c}, {c, c});
  const PatternSet a = patterns(same);
  EXPECT_NEAR(a.p_interference[0], 2 * c * c, 1e-15);
  EXPECT_NEAR(a.p_counter[0], 0.0, 1e-15);
  const SlitWavePair opposite(g, {c, c}, {-c, -c});
  const PatternSet b = patterns(opposite);
  EXPECT_NEAR(b.p_interference[0], 0.0, 1e-15);
  EXPECT_NEAR(b.p_counter[0], 2 * c * c, 1e-15);
}

TEST(Patterns, CancellationIdentityAndIntegrals) {
  const SlitWavePair pair = GaussianPreset{}.make();
  const PatternSet ps = patterns(pair);
  double worst = 0.0;
  for (std::size_t i = 0; i < ps.grid.size(); ++i) {
    const double lhs = ps.p_interference[i] + ps.p_counter[i];
    const double rhs = std::norm(pair.psi1()[i]) + std::norm(pair.psi2()[i]);
    worst = std::max(worst, std::fabs(lhs - rhs));
    EXPECT_NEAR(ps.p_incoherent[i], 0.5 * lhs, 1e-12);
    EXPECT_GE(ps.p_interference[i], -1e-12);
    EXPECT_GE(ps.p_counter[i], -1e-12);
  }
  EXPECT_LE(worst, 1e-12);
  EXPECT_NEAR(integrate(ps.grid, ps.p_interference), 1.0, 1e-8);
  EXPECT_NEAR(integrate(ps.grid, ps.p_counter), 1.0, 1e-8);
  EXPECT_NEAR(integrate(ps.grid, ps.p_incoherent), 1.0, 1e-8);
}

TEST(Patterns, ComplementaryFringes) {
  const PatternSet ps = patterns(GaussianPreset{}.make());
  // Both patterns carry the same local contrast |p - p_mix| / p_mix.
  for (std::size_t i = 0; i < ps.grid.size(); ++i) {
    if (ps.p_incoherent[i] < 1e-6) continue;
    EXPECT_NEAR(std::fabs(ps.p_interference[i] - ps.p_incoherent[i]),
                std::fabs(ps.p_counter[i] - ps.p_incoherent[i]), 1e-15);
  }
  // One fringe period around the centre.
  EXPECT_GT(fringe_visibility(ps.grid, ps.p_interference, -kPi / 6, kPi / 6), 0.85);
  EXPECT_GT(fringe_visibility(ps.grid, ps.p_counter, -kPi / 6, kPi / 6), 0.85);
  // Fringe period 2 pi / tilt; the counter pattern is shifted by half of it.
  const double shift = kPi / 6.0;
  const double h = ps.grid.spacing();
  const auto idx = [&](double x) {
    return static_cast<std::size_t>(std::lround((x - ps.grid.x_min()) / h));
  };
  EXPECT_GT(ps.p_interference[idx(0.0)], ps.p_counter[idx(0.0)]);
  EXPECT_LT(ps.p_interference[idx(shift)], ps.p_counter[idx(shift)]);
}

TEST(BranchPatterns, ErasureMatchesPatterns) {
  const SlitWavePair pair = GaussianPreset{}.make();
  const double h = 1.0 / std::sqrt(2.0);
  const PatternSet a = patterns(pair);
  const PatternSet b =
      branch_patterns(pair, MinimalMixture(0.5), StateVector({h, h}), StateVector({h, -h}));
  for (std::size_t i = 0; i < pair.grid().size(); ++i) {
    EXPECT_NEAR(a.p_interference[i], b.p_interference[i], 1e-12);
    EXPECT_NEAR(a.p_counter[i], b.p_counter[i], 1e-12);
    EXPECT_NEAR(a.p_incoherent[i], b.p_incoherent[i], 1e-12);
  }
}

TEST(FringeVisibility, EmptyWindowThrows) {
  const PatternSet ps = patterns(GaussianPreset{}.make());
  EXPECT_THROW(fringe_visibility(ps.grid, ps.p_interference, 30.0, 40.0), std::domain_error);
}

}  // namespace
}  // namespace qcerase
