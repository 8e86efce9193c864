#include <cmath>
#include <cstdlib>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "imdplan/products.hpp"

using namespace imdplan;

namespace {

ToneSet two_tone() {
  return ToneSet(Tone(Frequency::ghz(7.92), PowerDbm{-70.0}),
                 {Tone(Frequency::ghz(7.5551), PowerDbm{-106.0}),
                  Tone(Frequency::ghz(7.1924), PowerDbm{-109.0})});
}

// Independent enumeration: every vector in the order cube, kept once per conjugate pair.
std::set<std::vector<int>> brute_force(const ToneSet& tones, int max_order,
                                       std::optional<SignalBand> band, bool odd_only) {
  const std::size_t dims = tones.size() + 1;
  std::vector<double> f{tones.pump().freq.hz()};
  for (const auto& s : tones.signals()) f.push_back(s.freq.hz());
  std::set<std::vector<int>> out;
  std::vector<int> v(dims, -max_order);
  for (;;) {
    int order = 0;
    for (int x : v) order += std::abs(x);
    int first = 0;
    for (int x : v) {
      if (x != 0) {
        first = x;
        break;
      }
    }
    if (order >= 1 && order <= max_order && first > 0 && (!odd_only || order % 2 == 1)) {
      double hz = 0.0;
      for (std::size_t i = 0; i < dims; ++i) hz += v[i] * f[i];
      if (!band || band->contains(Frequency::hz(std::abs(hz)))) out.insert(v);
    }
    std::size_t k = 0;
    while (k < dims && v[k] == max_order) v[k++] = -max_order;
    if (k == dims) break;
    ++v[k];
  }
  return out;
}

std::set<std::vector<int>> as_vectors(const std::vector<IMProduct>& products) {
  std::set<std::vector<int>> out;
  for (const auto& p : products) {
    std::vector<int> v{p.coeffs.pump};
    v.insert(v.end(), p.coeffs.signal.begin(), p.coeffs.signal.end());
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST(Products, CollisionProductSitsTwoPointTwoMegahertzAboveSignal) {
  const auto tones = two_tone();
  const auto p = make_product(tones, Coefficients{1, {-1, 1}});
  EXPECT_NEAR(p.freq.ghz(), 7.5573, 1e-12);
  EXPECT_EQ(p.total_order(), 3);
  EXPECT_EQ(p.signal_order(), 2);
  EXPECT_NEAR((p.freq - tones.signals()[0].freq).mhz(), 2.2, 1e-6);
}

TEST(Products, SignalItselfIsOrderOne) {
  const ToneSet tones(Tone(Frequency::ghz(7.92), PowerDbm{-70.0}),
                      {Tone(Frequency::ghz(7.0), PowerDbm{-100.0})});
  const auto p = make_product(tones, Coefficients{0, {1}});
  EXPECT_EQ(p.freq, Frequency::ghz(7.0));
  EXPECT_EQ(p.total_order(), 1);
  EXPECT_EQ(p.signal_order(), 1);
}

TEST(Products, BandLimitedOddOrderCountMatchesBruteForce) {
  const SignalBand band(Frequency::ghz(6.25), Frequency::ghz(7.55));
  const auto got = enumerate_products(two_tone(), 5, band, Parity::odd_only);
  ASSERT_EQ(got.size(), 9u);
  const std::set<std::vector<int>> expected{{2, -2, -1}, {1, 0, -2}, {0, 2, -3},
                                            {2, -3, 0},  {1, -1, -1}, {0, 1, -2},
                                            {1, -2, 0},  {0, 0, 1},   {1, -2, 2}};
  EXPECT_EQ(as_vectors(got), expected);
  EXPECT_EQ(as_vectors(got), brute_force(two_tone(), 5, band, true));
}

TEST(Products, CompletenessAgainstBruteForce) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(4.0, 9.0);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (int order = 1; order <= 7; order += 2) {
      std::vector<Tone> sig;
      for (std::size_t i = 0; i < n; ++i) sig.emplace_back(Frequency::ghz(u(rng)), PowerDbm{-100});
      const ToneSet tones(Tone(Frequency::ghz(u(rng) + 1.0), PowerDbm{-70.0}), sig);
      EXPECT_EQ(as_vectors(enumerate_products(tones, order)),
                brute_force(tones, order, std::nullopt, false))
          << "N=" << n << " order=" << order;
      EXPECT_EQ(as_vectors(enumerate_products(tones, order, std::nullopt, Parity::odd_only)),
                brute_force(tones, order, std::nullopt, true));
    }
  }
}

TEST(Products, FrequencyMatchesCoefficientsForRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 12.0);
  const ToneSet tones(Tone(Frequency::ghz(u(rng)), PowerDbm{-70.0}),
                      {Tone(Frequency::ghz(u(rng)), PowerDbm{-100.0}),
                       Tone(Frequency::ghz(u(rng)), PowerDbm{-100.0})});
  for (const auto& p : enumerate_products(tones, 6)) {
    const double expect = std::abs(p.coeffs.pump * tones.pump().freq.hz() +
                                   p.coeffs.signal[0] * tones.signals()[0].freq.hz() +
                                   p.coeffs.signal[1] * tones.signals()[1].freq.hz());
    EXPECT_NEAR(p.freq.hz(), expect, 1e-9 * std::max(1.0, expect));
    EXPECT_GE(p.total_order(), p.signal_order());
    EXPECT_FALSE(p.coeffs.is_zero());
  }
}

TEST(Products, OutputIsSortedAndCanonical) {
  const auto got = enumerate_products(two_tone(), 5);
  for (std::size_t i = 1; i < got.size(); ++i) {
    const auto key = [](const IMProduct& p) {
      return std::make_tuple(p.signal_order(), p.total_order(), p.freq, p.coeffs);
    };
    EXPECT_LT(key(got[i - 1]), key(got[i]));
  }
  for (const auto& p : got) EXPECT_EQ(p.coeffs, p.coeffs.canonical());
}

TEST(Products, CanonicalPicksPositiveLeadingEntry) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int i = 0; i < 500; ++i) {
    Coefficients c{u(rng), {u(rng), u(rng), u(rng)}};
    if (c.is_zero()) continue;
    EXPECT_EQ(c.canonical(), c.negated().canonical());
    const auto k = c.canonical();
    const int lead = k.pump != 0 ? k.pump
                     : k.signal[0] != 0 ? k.signal[0]
                     : k.signal[1] != 0 ? k.signal[1]
                                        : k.signal[2];
    EXPECT_GT(lead, 0);
  }
}

TEST(Products, RejectsBadInput) {
  EXPECT_THROW(ToneSet(Tone(Frequency::ghz(7.92), PowerDbm{}), {}), std::invalid_argument);
  EXPECT_THROW(ToneSet(Tone(Frequency::ghz(7.0), PowerDbm{}), {Tone(Frequency::ghz(7.0), PowerDbm{})}),
               std::invalid_argument);
  EXPECT_THROW(ToneSet(Tone(Frequency::ghz(7.92), PowerDbm{}),
                       {Tone(Frequency::ghz(7.0), PowerDbm{}), Tone(Frequency::ghz(7.0), PowerDbm{})}),
               std::invalid_argument);
  EXPECT_THROW(enumerate_products(two_tone(), 16), std::invalid_argument);
  EXPECT_THROW(enumerate_products(two_tone(), 0), std::invalid_argument);
  EXPECT_THROW(SignalBand(Frequency::ghz(7.0), Frequency::ghz(6.0)), std::invalid_argument);
}

TEST(Products, TonePhaseIsWrapped) {
  const Tone t(Frequency::ghz(7.0), PowerDbm{-100.0}, -0.25);
  EXPECT_NEAR(t.phase, 2.0 * std::acos(-1.0) - 0.25, 1e-15);
}
