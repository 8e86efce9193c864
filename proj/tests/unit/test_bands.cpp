#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "imdplan/bands.hpp"

using namespace imdplan;

namespace {

const SignalBand kBand(Frequency::ghz(6.4), Frequency::ghz(7.4));

}  // namespace

TEST(ClassBand, PumpDifferenceClassIsTwiceTheBandWide) {
  const auto iv = class_band(ProductClass{1, 1, 1}, kBand, Frequency::ghz(7.92));
  EXPECT_NEAR(iv.lo.ghz(), 6.92, 1e-12);
  EXPECT_NEAR(iv.hi.ghz(), 8.92, 1e-12);
  EXPECT_NEAR(iv.unfolded_width.ghz(), 2.0, 1e-12);
}

TEST(ClassBand, SignalClassIsTheBand) {
  const auto iv = class_band(ProductClass{0, 1, 0}, kBand, Frequency::ghz(9.0));
  EXPECT_EQ(iv.lo, kBand.f_min);
  EXPECT_EQ(iv.hi, kBand.f_max);
  EXPECT_EQ(iv.unfolded_width, kBand.width());
}

TEST(ClassBand, PumplessThirdOrderCoversTheBandForEveryPump) {
  for (double fp : {7.92, 9.45, 20.0}) {
    const auto iv = class_band(ProductClass{0, 2, 1}, kBand, Frequency::ghz(fp));
    EXPECT_NEAR(iv.lo.ghz(), 5.4, 1e-12);
    EXPECT_NEAR(iv.hi.ghz(), 8.4, 1e-12);
    EXPECT_TRUE(iv.overlaps(kBand.f_min, kBand.f_max));
  }
}

TEST(ClassBand, FoldsAcrossZero) {
  const auto iv = class_band(ProductClass{0, 1, 1}, kBand, Frequency::ghz(7.92));
  EXPECT_DOUBLE_EQ(iv.lo.hz(), 0.0);
  EXPECT_NEAR(iv.hi.ghz(), 1.0, 1e-12);
}

TEST(ClassBand, ContainsEveryPlacementOfItsSlots) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> in_band(kBand.f_min.hz(), kBand.f_max.hz());
  const Frequency pump = Frequency::ghz(7.92);
  for (const auto& cls : enumerate_classes(1, 3, 2)) {
    const auto iv = class_band(cls, kBand, pump);
    for (int trial = 0; trial < 2000; ++trial) {
      double f = cls.pump * pump.hz();
      for (int i = 0; i < cls.plus; ++i) f += in_band(rng);
      for (int i = 0; i < cls.minus; ++i) f -= in_band(rng);
      const double a = std::abs(f);
      EXPECT_GE(a, iv.lo.hz() - 1e-3) << cls.label();
      EXPECT_LE(a, iv.hi.hz() + 1e-3) << cls.label();
    }
  }
}

TEST(ClassBand, CanonicalFoldsConjugates) {
  EXPECT_EQ((ProductClass{-1, 2, 0}.canonical()), (ProductClass{1, 0, 2}));
  EXPECT_EQ((ProductClass{0, 1, 2}.canonical()), (ProductClass{0, 2, 1}));
  EXPECT_EQ((ProductClass{1, 1, 1}.canonical()), (ProductClass{1, 1, 1}));
}

TEST(ClassBand, EnumerationIsCanonicalAndUnique) {
  const auto classes = enumerate_classes(2, 2, 2);
  // Per |n_p| in {0,1,2} with O_s = 2: pump 0 gives {2,0},{1,1}; pump > 0 gives 3 each.
  EXPECT_EQ(classes.size(), 2u + 3u + 3u);
  for (const auto& c : classes) EXPECT_EQ(c, c.canonical());
  EXPECT_THROW(enumerate_classes(3, 2, 1), std::invalid_argument);
}

TEST(PumpCondition, ReferenceCases) {
  EXPECT_TRUE(pump_condition_satisfied(kBand, Frequency::ghz(9.45)));
  EXPECT_FALSE(pump_condition_satisfied(kBand, Frequency::ghz(7.92)));
  EXPECT_FALSE(pump_condition_satisfied(kBand, Frequency::ghz(8.4)));
  EXPECT_NEAR(pump_condition_margin(kBand, Frequency::ghz(9.45)).ghz(), 1.05, 1e-12);
}

TEST(PumpCondition, BoundaryJustAboveThreshold) {
  const double f = 7.0e9;
  const double eps = 10e6;
  const SignalBand band(Frequency::hz(f), Frequency::hz(f + eps));
  EXPECT_TRUE(pump_condition_satisfied(band, Frequency::hz(f + 2 * eps + 1.0)));
  EXPECT_FALSE(pump_condition_satisfied(band, Frequency::hz(f + 2 * eps)));
}

TEST(PumpCondition, NoPumpDifferenceProductLandsInBand) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> lo(1.0e9, 10.0e9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  long violations = 0;
  long samples = 0;
  for (int b = 0; b < 100; ++b) {
    const double fmin = lo(rng);
    const double fmax = fmin + (0.001 + 0.4 * u(rng)) * fmin;
    const SignalBand band(Frequency::hz(fmin), Frequency::hz(fmax));
    // Below 3 f_min the folded branch f_p - f_i - f_j stays under the band.
    const double threshold = 2 * fmax - fmin;
    const double fp = threshold + (0.001 + 0.998 * u(rng)) * (3 * fmin - threshold);
    ASSERT_TRUE(pump_condition_satisfied(band, Frequency::hz(fp)));
    for (int s = 0; s < 1000; ++s) {
      const double fi = fmin + u(rng) * (fmax - fmin);
      const double fj = s % 10 == 0 ? fi : fmin + u(rng) * (fmax - fmin);
      for (double f : {fi + (fp - fj), std::abs(fi - (fp - fj))}) {
        ++samples;
        if (f >= fmin && f <= fmax) ++violations;
      }
    }
  }
  EXPECT_GE(samples, 100000);
  EXPECT_EQ(violations, 0);
}

TEST(PumpCondition, ViolatedConditionAdmitsProductsInBand) {
  const Frequency pump = Frequency::ghz(7.92);
  for (const auto& cls : pump_difference_classes()) {
    EXPECT_EQ(cls.signal_order(), 2);
  }
  const auto iv = class_band(ProductClass{1, 0, 2}, kBand, pump);
  EXPECT_TRUE(iv.overlaps(kBand.f_min, kBand.f_max));
}
