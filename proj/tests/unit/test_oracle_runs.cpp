#include <cmath>

#include <gtest/gtest.h>

#include "imdplan/oracle.hpp"

using namespace imdplan;
using namespace imdplan::oracle;

namespace {

OracleSettings settings() {
  OracleSettings st;
  st.model.gain_db = 18.4;
  st.model.k_per_v2 = k_for_compression_point(PowerDbm{-96.7});
  return st;
}

double expected_slope(const Coefficients& c, int swept) {
  return swept < 0 ? c.signal_order() : std::abs(c.signal[static_cast<std::size_t>(swept)]);
}

}  // namespace

TEST(OracleRuns, ReferencePlanUsesDistinctBins) {
  const auto st = settings();
  const auto tones = reference_tone_plan(st.trace, PowerDbm{-107}, PowerDbm{-122}, PowerDbm{-122});
  EXPECT_EQ(tones.pump().freq, st.trace.bin_frequency(kReferencePumpBin));
  EXPECT_EQ(tones.signals()[1].freq, st.trace.bin_frequency(kReferenceSignal2Bin));
  const auto products = cubic_products(tones);
  for (std::size_t i = 0; i < products.size(); ++i) {
    EXPECT_LT(products[i].freq.hz(), st.trace.nyquist_hz());
    for (std::size_t j = i + 1; j < products.size(); ++j) {
      EXPECT_GT(std::abs(products[i].freq.hz() - products[j].freq.hz()),
                4.0 * st.trace.bin_spacing_hz());
    }
  }
}

TEST(OracleRuns, LogSlopesMatchCoefficientMagnitudes) {
  const auto st = settings();
  const double p1 = compression_point(st.model).dbm;
  const auto base = reference_tone_plan(st.trace, PowerDbm{p1 - 10}, PowerDbm{p1 - 25},
                                        PowerDbm{p1 - 25});
  const auto products = cubic_products(base);
  for (int swept : {0, 1, -1}) {
    PowerSweepSpec spec;
    spec.swept_signal = swept;
    spec.stop_dbm = p1 - 20.0;
    spec.start_dbm = spec.stop_dbm - 20.0;
    spec.points = 6;
    spec.joint_offsets_db = {0.0, -3.0};
    const auto res = power_sweep(st, base, products, spec);
    ASSERT_EQ(res.slopes.size(), products.size());
    for (std::size_t j = 0; j < products.size(); ++j) {
      const double e = expected_slope(products[j].coeffs, swept);
      const double tol = e == 0.0 ? 0.02 : 0.02 * e;
      EXPECT_NEAR(res.slopes[j], e, tol) << products[j].coeffs.to_string() << " sweep " << swept;
    }
    if (swept < 0) {
      for (const auto& in : res.input_dbm) EXPECT_NEAR(in[1] - in[0], -3.0, 1e-12);
    }
  }
}

TEST(OracleRuns, PhaseOffsetsAreConstantOverGrid) {
  const auto st = settings();
  const double p1 = compression_point(st.model).dbm;
  const auto base = reference_tone_plan(st.trace, PowerDbm{p1 - 10}, PowerDbm{p1 - 25},
                                        PowerDbm{p1 - 25});
  const auto products = cubic_products(base);
  const auto res = phase_grid(st, base, products, 5);
  EXPECT_EQ(res.rows.size(), 25u * products.size());
  for (double r : res.max_residual) EXPECT_LT(r, 1e-6);
}

TEST(OracleRuns, SaturationCurveMatchesClosedForm) {
  const auto st = settings();
  const auto sat = single_tone_saturation(st, st.trace.bin_frequency(300), -130.0, -95.0, 8);
  ASSERT_EQ(sat.size(), 8u);
  for (const auto& p : sat) EXPECT_NEAR(p.oracle_gain_db, p.model_gain_db, 0.05);
}

TEST(OracleRuns, CompressionAndInterceptAgreeWithAnalytic) {
  const auto st = settings();
  const auto f1 = st.trace.bin_frequency(kReferenceSignal1Bin);
  const auto f2 = st.trace.bin_frequency(kReferenceSignal2Bin);
  const double p1 = oracle_compression_point(st, f1).dbm;
  const double ip3 = oracle_ip3_point(st, f1, f2, PowerDbm{-96.7 - 40.0}).dbm;
  EXPECT_NEAR(p1, -96.7, 0.05);
  EXPECT_NEAR(ip3, ip3_point(st.model).dbm, 0.05);
  EXPECT_NEAR(ip3 - p1, ip3_minus_compression_db(), 0.1);
}

TEST(OracleRuns, ThirdHarmonicAmplitude) {
  auto st = settings();
  const auto f = st.trace.bin_frequency(100);
  const PowerDbm in{-110.0};
  const std::vector<Tone> tones{Tone(f, in)};
  const auto out = apply_nonlinearity(synthesize_trace(tones, st.trace), st.model);
  const std::vector<Frequency> read{f * 3.0};
  const auto est = extract_tones(out, read, st.trace.window);
  // x^3 = A^3 (3 cos + cos 3) / 4.
  const double a = amplitude_from_power(in);
  const double a3 = 0.25 * std::sqrt(st.model.gain_linear()) * st.model.k_per_v2 * a * a * a;
  EXPECT_NEAR(est[0].power.dbm, power_from_amplitude(a3).dbm, 0.01);
}

TEST(OracleRuns, SinglePointCalibrationPredictsOtherPowers) {
  const auto st = settings();
  const double p1 = compression_point(st.model).dbm;
  const auto cal_point = reference_tone_plan(st.trace, PowerDbm{p1 - 10}, PowerDbm{p1 - 30},
                                             PowerDbm{p1 - 33});
  const auto products = cubic_products(cal_point);
  const auto measured = measure_products(st, cal_point, products);
  const auto fitted = calibrate_from_measurement(st.model, cal_point, measured, st.model.gain_db);

  const auto probe = reference_tone_plan(st.trace, PowerDbm{p1 - 10}, PowerDbm{p1 - 38},
                                         PowerDbm{p1 - 27}, 1.0, 2.5);
  const auto truth = measure_products(st, probe, products);
  for (std::size_t i = 0; i < products.size(); ++i) {
    const auto& c = truth[i].coeffs;
    if (c.signal_order() >= 2 || (c.signal_order() == 1 && c.total_order() == 1)) {
      EXPECT_NEAR(product_power(fitted, probe, make_product(probe, c)).dbm, truth[i].power.dbm,
                  0.5)
          << c.to_string();
    }
    EXPECT_LT(phase_distance(product_phase(fitted, probe, make_product(probe, c)), truth[i].phase),
              1e-3)
        << c.to_string();
  }
}

TEST(OracleRuns, FitSlopeRejectsDegenerateInput) {
  const std::vector<double> x{1.0, 1.0};
  const std::vector<double> y{2.0, 3.0};
  EXPECT_THROW(fit_slope(x, y), std::invalid_argument);
  const std::vector<double> x2{0.0, 1.0, 2.0};
  const std::vector<double> y2{1.0, 3.0, 5.0};
  EXPECT_NEAR(fit_slope(x2, y2), 2.0, 1e-12);
}
