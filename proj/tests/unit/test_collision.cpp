#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "collision_oracle.hpp"
#include "imdplan/collision.hpp"

using namespace imdplan;
using namespace imdplan::collision;

TEST(Collision, FigureFourSpurSitsTwoPointTwoMegahertzAway) {
  const std::vector<Frequency> sig{Frequency::ghz(7.5551), Frequency::ghz(7.1924)};
  const auto hits = detect_collisions(sig, Frequency::ghz(7.92), CollisionPolicy{});
  ASSERT_EQ(hits.size(), 2u);
  bool found = false;
  for (const auto& c : hits) {
    EXPECT_NEAR(c.detuning.hz(), 2.2e6, 1e3);
    if (c.product == Coefficients{1, {-1, 1}}) {
      found = true;
      EXPECT_EQ(c.signal_index, 0u);
      EXPECT_NEAR(c.product_freq.ghz(), 7.5573, 1e-12);
    }
  }
  EXPECT_TRUE(found);
  const auto mirror = std::find_if(hits.begin(), hits.end(), [](const Collision& c) {
    return c.signal_index == 1;
  });
  ASSERT_NE(mirror, hits.end());
  EXPECT_NEAR(mirror->product_freq.ghz(), 7.1902, 1e-12);
}

TEST(Collision, EvenlySpacedTripleCollidesExactly) {
  const std::vector<Frequency> sig{Frequency::ghz(6.5), Frequency::ghz(6.9), Frequency::ghz(7.3)};
  CollisionPolicy policy;
  policy.delta_min = Frequency::mhz(1.0);
  policy.classes = {ProductClass{0, 2, 1}};
  const auto hits = detect_collisions(sig, Frequency::ghz(7.92), policy);
  bool found = false;
  for (const auto& c : hits) {
    if (c.signal_index == 1 && c.product == Coefficients{0, {1, -1, 1}}) {
      found = true;
      EXPECT_LT(c.detuning.hz(), 1e-3);
    }
  }
  EXPECT_TRUE(found);
  for (std::size_t i = 1; i < hits.size(); ++i) EXPECT_LE(hits[i - 1].detuning, hits[i].detuning);
}

TEST(Collision, DegenerateCombinationsAreExcluded) {
  const std::vector<Frequency> sig{Frequency::ghz(7.0)};
  CollisionPolicy policy;
  policy.classes = {ProductClass{0, 2, 1}, ProductClass{0, 1, 1}};
  EXPECT_TRUE(detect_collisions(sig, Frequency::ghz(7.92), policy).empty());
  policy.exclude_degenerate = false;
  EXPECT_FALSE(detect_collisions(sig, Frequency::ghz(7.92), policy).empty());
}

TEST(Collision, SingleSignalWithPumpAboveThresholdIsClean) {
  const std::vector<Frequency> sig{Frequency::ghz(7.0)};
  CollisionPolicy policy;
  policy.orders = OrderFilter{2, 3, 2};
  EXPECT_TRUE(detect_collisions(sig, Frequency::ghz(9.45), policy).empty());
}

TEST(Collision, MinDetuningMatchesBruteForceEnumeration) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> f(6.4e9, 7.4e9);
  for (const auto& [min_os, max_os] : {std::pair{2, 2}, std::pair{3, 3}, std::pair{2, 3}}) {
    const auto classes = enumerate_classes(min_os, max_os, 2);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<double> sig;
      const int n = 1 + trial % 4;
      for (int i = 0; i < n; ++i) sig.push_back(f(rng));
      const double pump = trial % 2 ? 7.92e9 : 9.45e9;
      const double got = min_detuning_hz(sig, pump, classes, true);
      const double want = reference::brute_min_detuning_hz(sig, pump, 2, min_os, max_os);
      EXPECT_NEAR(got, want, 1e-3) << "O_s " << min_os << ".." << max_os << " n=" << n;
    }
  }
}

TEST(Collision, DetectionAgreesWithMinDetuning) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> f(6.4e9, 7.4e9);
  CollisionPolicy policy;
  const auto all = enumerate_classes(2, 2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> hz;
    std::vector<Frequency> sig;
    for (int i = 0; i < 6; ++i) {
      hz.push_back(f(rng));
      sig.push_back(Frequency::hz(hz.back()));
    }
    const auto hits = detect_collisions(sig, Frequency::ghz(7.92), policy);
    const double md = min_detuning_hz(hz, 7.92e9, all, true);
    EXPECT_EQ(!hits.empty(), md < policy.delta_min.hz());
    if (!hits.empty()) {
      EXPECT_NEAR(hits.front().detuning.hz(), md, 1e-3);
    }
  }
}

TEST(Collision, ResolvedClassesAreThoseNearTheBand) {
  CollisionPolicy policy;
  const SignalBand band(Frequency::ghz(6.4), Frequency::ghz(7.4));
  EXPECT_TRUE(policy.resolve_classes(band, Frequency::ghz(9.45)).empty());
  const auto near = policy.resolve_classes(band, Frequency::ghz(7.92));
  EXPECT_FALSE(near.empty());
  EXPECT_LT(near.size(), enumerate_classes(2, 2, 2).size());
  for (const auto& c : near) {
    EXPECT_TRUE(class_band(c, band, Frequency::ghz(7.92))
                    .overlaps(band.f_min - policy.delta_min, band.f_max + policy.delta_min));
  }
  policy.classes = {ProductClass{1, 1, 1}};
  EXPECT_EQ(policy.resolve_classes(band, Frequency::ghz(9.45)).size(), 1u);
}

TEST(Collision, PolicyValidation) {
  CollisionPolicy p;
  p.delta_min = Frequency::hz(0.0);
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = CollisionPolicy{};
  p.orders = OrderFilter{3, 2, 1};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  const std::vector<Frequency> dup{Frequency::ghz(7.0), Frequency::ghz(7.0)};
  EXPECT_THROW(detect_collisions(dup, Frequency::ghz(7.92), CollisionPolicy{}),
               std::invalid_argument);
}

TEST(Collision, PulseLengthToDetuning) {
  EXPECT_NEAR(fwhm_to_delta(0.12e-6).mhz(), 5.0, 1e-9);
  EXPECT_THROW(fwhm_to_delta(0.0), std::invalid_argument);
}
