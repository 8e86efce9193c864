#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

#include "collision_oracle.hpp"
#include "imdplan/collision.hpp"

using namespace imdplan;
using namespace imdplan::collision;

namespace {

MCConfig small_config() {
  MCConfig cfg;
  cfg.samples = 400;
  return cfg;
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* value) {
    if (const char* old = std::getenv("IMDPLAN_THREADS")) saved_ = old;
    setenv("IMDPLAN_THREADS", value, 1);
  }
  ~ScopedThreads() {
    if (saved_.empty()) {
      unsetenv("IMDPLAN_THREADS");
    } else {
      setenv("IMDPLAN_THREADS", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST(MonteCarlo, AppendixDefaultsGiveAboutHalfAtTenSignals) {
  const auto table = mc_collision_probability(MCConfig{}, CollisionPolicy{});
  EXPECT_EQ(table.samples, 2000u);
  EXPECT_NEAR(table.at(10, Frequency::mhz(5.0)), 0.5, 0.05);
}

TEST(MonteCarlo, TableIsMonotoneInSignalsAndDetuning) {
  const auto t = mc_collision_probability(small_config(), CollisionPolicy{});
  for (std::size_t i = 0; i < t.n_values.size(); ++i) {
    for (std::size_t j = 0; j < t.delta_values.size(); ++j) {
      if (i > 0) {
        EXPECT_LE(t.p_coll[i - 1][j], t.p_coll[i][j]);
      }
      if (j > 0) {
        EXPECT_LE(t.p_coll[i][j - 1], t.p_coll[i][j]);
      }
      const double p = t.p_coll[i][j];
      EXPECT_NEAR(t.std_error[i][j], std::sqrt(p * (1 - p) / 400.0), 1e-15);
    }
  }
}

TEST(MonteCarlo, SingleSignalNeverCollides) {
  const auto t = mc_collision_probability(small_config(), CollisionPolicy{});
  for (const auto& d : t.delta_values) EXPECT_EQ(t.at(1, d), 0.0);
}

TEST(MonteCarlo, PumpConditionGivesExactZero) {
  auto cfg = small_config();
  cfg.pump = Frequency::ghz(9.45);
  CollisionPolicy policy;
  policy.classes = pump_difference_classes();
  const auto t = mc_collision_probability(cfg, policy);
  for (const auto& row : t.p_coll) {
    for (double p : row) EXPECT_EQ(p, 0.0);
  }
}

TEST(MonteCarlo, ResultsDoNotDependOnWorkerCount) {
  MCTable a;
  MCTable b;
  {
    ScopedThreads one("1");
    a = mc_collision_probability(small_config(), CollisionPolicy{});
  }
  {
    ScopedThreads three("3");
    b = mc_collision_probability(small_config(), CollisionPolicy{});
  }
  EXPECT_EQ(a.p_coll, b.p_coll);
  auto other = small_config();
  other.seed = 2;
  EXPECT_NE(mc_collision_probability(other, CollisionPolicy{}).p_coll, a.p_coll);
}

TEST(MonteCarlo, SamplesRespectBandAndSpacing) {
  const MCConfig cfg;
  for (std::uint64_t s = 0; s < 200; ++s) {
    auto f = sample_configuration(cfg, 10, s);
    ASSERT_EQ(f.size(), 10u);
    EXPECT_EQ(f, sample_configuration(cfg, 10, s));
    for (double x : f) {
      EXPECT_GE(x, cfg.band.f_min.hz());
      EXPECT_LE(x, cfg.band.f_max.hz());
    }
    std::sort(f.begin(), f.end());
    for (std::size_t i = 1; i < f.size(); ++i) EXPECT_GE(f[i] - f[i - 1], cfg.min_spacing.hz());
  }
}

TEST(MonteCarlo, SpacingAcceptanceAndInfeasibility) {
  EXPECT_NEAR(spacing_acceptance(10, Frequency::mhz(20), Frequency::ghz(1.0)),
              std::pow(1.0 - 9 * 0.02, 10), 1e-15);
  EXPECT_EQ(spacing_acceptance(1, Frequency::mhz(20), Frequency::ghz(1.0)), 1.0);
  MCConfig cfg;
  cfg.min_spacing = Frequency::mhz(100.0);
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  EXPECT_THROW(mc_collision_probability(cfg, CollisionPolicy{}), std::invalid_argument);
  cfg.min_spacing = Frequency::mhz(200.0);
  EXPECT_THROW(mc_collision_probability(cfg, CollisionPolicy{}), std::invalid_argument);
}

TEST(MonteCarlo, PerConfigurationDecisionMatchesBruteForce) {
  MCConfig cfg;
  cfg.pump = Frequency::ghz(9.45);
  cfg.n_values = {6};
  cfg.delta_values = {Frequency::mhz(5.0)};
  cfg.samples = 300;
  CollisionPolicy policy;
  policy.orders = OrderFilter{3, 3, 2};
  const auto table = mc_collision_probability(cfg, policy);
  int hits = 0;
  for (std::uint64_t s = 0; s < cfg.samples; ++s) {
    const auto f = sample_configuration(cfg, 6, s);
    if (reference::brute_min_detuning_hz(f, cfg.pump.hz(), 2, 3, 3) < 5e6) ++hits;
  }
  EXPECT_DOUBLE_EQ(table.at(6, Frequency::mhz(5.0)), hits / 300.0);
  // Third-order products keep colliding even with the pump far above the band.
  EXPECT_GT(table.at(6, Frequency::mhz(5.0)), 0.5);
}

TEST(MonteCarlo, IndependentSamplerAgreesStatistically) {
  MCConfig cfg;
  cfg.n_values = {10};
  cfg.delta_values = {Frequency::mhz(5.0)};
  const double p_impl = mc_collision_probability(cfg, CollisionPolicy{}).at(10, Frequency::mhz(5.0));
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(6.4e9, 7.4e9);
  const int trials = 1000;
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> f;
    for (;;) {
      f.clear();
      for (int i = 0; i < 10; ++i) f.push_back(u(rng));
      auto sorted = f;
      std::sort(sorted.begin(), sorted.end());
      bool ok = true;
      for (std::size_t i = 1; i < sorted.size(); ++i) ok = ok && sorted[i] - sorted[i - 1] >= 20e6;
      if (ok) break;
    }
    if (reference::brute_min_detuning_hz(f, 7.92e9, 2, 2, 2) < 5e6) ++hits;
  }
  const double p_ref = static_cast<double>(hits) / trials;
  const double sigma = std::sqrt(p_ref * (1 - p_ref) * (1.0 / trials + 1.0 / 2000.0));
  EXPECT_NEAR(p_impl, p_ref, 4.0 * sigma);
}

TEST(MonteCarlo, EvenSplitAndComposition) {
  EXPECT_EQ(even_split(17, 4), (std::vector<int>{5, 4, 4, 4}));
  EXPECT_EQ(even_split(49, 12), (std::vector<int>{5, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4}));
  EXPECT_EQ(even_split(49, 8).front(), 7);
  EXPECT_THROW(even_split(3, 4), std::invalid_argument);

  const std::vector<double> per{0.1, 0.2, 0.05};
  const double total = compose_failure(per);
  EXPECT_NEAR(total, 1.0 - 0.9 * 0.8 * 0.95, 1e-15);
  EXPECT_GE(total, 0.2);
  EXPECT_LE(total, 0.35);
  const std::vector<double> zeros{0.0, 0.0};
  EXPECT_EQ(compose_failure(zeros), 0.0);
  const std::vector<double> bad{1.5};
  EXPECT_THROW(compose_failure(bad), std::invalid_argument);
}

TEST(MonteCarlo, SurfaceCodeSeventeenQubits) {
  const auto lines = even_split(17, 4);
  const double p = surface_code_failure(lines, Frequency::mhz(5.0), Frequency::ghz(7.92),
                                        CollisionPolicy{}, MCConfig{});
  EXPECT_NEAR(p, 0.18, 0.05);
}
