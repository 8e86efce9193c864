#include "imdplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "imdplan/parallel.hpp"

namespace imdplan::oracle {

ToneSet reference_tone_plan(const TraceConfig& cfg, PowerDbm pump, PowerDbm p1, PowerDbm p2,
                            double phi1, double phi2) {
  return ToneSet(Tone(cfg.bin_frequency(kReferencePumpBin), pump, 0.0),
                 {Tone(cfg.bin_frequency(kReferenceSignal1Bin), p1, phi1),
                  Tone(cfg.bin_frequency(kReferenceSignal2Bin), p2, phi2)});
}

std::vector<ProductMeasurement> measure_products(const OracleSettings& settings,
                                                 const ToneSet& tones,
                                                 std::span<const IMProduct> products) {
  const auto all = tones.all_tones();
  const auto input = synthesize_trace(all, settings.trace);
  const auto output = apply_nonlinearity(input, settings.model, settings.quintic_per_v4);

  std::vector<Frequency> freqs;
  freqs.reserve(products.size());
  for (const auto& p : products) freqs.push_back(p.freq);
  const auto est = extract_tones(output, freqs, settings.trace.window, settings.trace.z0_ohm);

  std::vector<ProductMeasurement> out;
  out.reserve(products.size());
  for (std::size_t i = 0; i < products.size(); ++i) {
    out.push_back({products[i].coeffs, products[i].freq, est[i].power, est[i].phase});
  }
  return out;
}

std::vector<IMProduct> cubic_products(const ToneSet& tones) {
  std::vector<IMProduct> out;
  for (auto& p : enumerate_products(tones, 3, std::nullopt, Parity::odd_only)) {
    if (p.signal_order() >= 1) out.push_back(std::move(p));
  }
  return out;
}

double fit_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more paired points");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("slope fit needs distinct x values");
  return sxy / sxx;
}

namespace {

ToneSet with_signal_powers(const ToneSet& base, std::span<const double> powers_dbm) {
  std::vector<Tone> sig = base.signals();
  for (std::size_t i = 0; i < sig.size(); ++i) sig[i].power = PowerDbm{powers_dbm[i]};
  return ToneSet(base.pump(), std::move(sig));
}

ToneSet with_signal_phases(const ToneSet& base, double phi1, double phi2) {
  std::vector<Tone> sig = base.signals();
  sig.at(0).phase = wrap_phase(phi1);
  sig.at(1).phase = wrap_phase(phi2);
  return ToneSet(base.pump(), std::move(sig));
}

}  // namespace

PowerSweepResult power_sweep(const OracleSettings& settings, const ToneSet& base,
                             std::span<const IMProduct> products, const PowerSweepSpec& spec) {
  if (spec.points < 2) throw std::invalid_argument("a power sweep needs at least two points");
  if (spec.swept_signal >= static_cast<int>(base.size())) {
    throw std::invalid_argument("swept signal index out of range");
  }
  const std::size_t npts = static_cast<std::size_t>(spec.points);
  PowerSweepResult res;
  res.swept_dbm.resize(npts);
  res.input_dbm.resize(npts);
  for (const auto& p : products) res.products.push_back(p.coeffs);
  res.power_dbm.assign(products.size(), std::vector<double>(npts));

  const auto base_powers = base.signal_powers_dbm();
  for (std::size_t k = 0; k < npts; ++k) {
    const double x =
        spec.start_dbm + (spec.stop_dbm - spec.start_dbm) * static_cast<double>(k) /
                             static_cast<double>(npts - 1);
    res.swept_dbm[k] = x;
    auto powers = base_powers;
    if (spec.swept_signal >= 0) {
      powers[static_cast<std::size_t>(spec.swept_signal)] = x;
    } else {
      for (std::size_t i = 0; i < powers.size(); ++i) {
        powers[i] = x + (i < spec.joint_offsets_db.size() ? spec.joint_offsets_db[i] : 0.0);
      }
    }
    res.input_dbm[k] = powers;
  }

  parallel_for(npts, [&](std::size_t k) {
    const auto meas = measure_products(settings, with_signal_powers(base, res.input_dbm[k]),
                                       products);
    for (std::size_t j = 0; j < meas.size(); ++j) res.power_dbm[j][k] = meas[j].power.dbm;
  });

  for (const auto& series : res.power_dbm) res.slopes.push_back(fit_slope(res.swept_dbm, series));
  return res;
}

PhaseGridResult phase_grid(const OracleSettings& settings, const ToneSet& base,
                           std::span<const IMProduct> products, int grid) {
  if (grid < 1) throw std::invalid_argument("phase grid size must be >= 1");
  if (base.size() < 2) throw std::invalid_argument("phase grid needs two signal tones");
  const std::size_t g = static_cast<std::size_t>(grid);
  const auto freqs = base.signal_freqs_hz();
  const double pump_hz = base.pump().freq.hz();

  std::vector<Coefficients> oriented;
  for (const auto& p : products) {
    oriented.push_back(positive_frequency_orientation(p.coeffs, pump_hz, freqs));
  }

  PhaseGridResult res;
  for (const auto& p : products) res.products.push_back(p.coeffs);
  std::vector<std::vector<ProductMeasurement>> meas(g * g);
  parallel_for(g * g, [&](std::size_t idx) {
    const double phi1 = kTwoPi * static_cast<double>(idx / g) / static_cast<double>(g);
    const double phi2 = kTwoPi * static_cast<double>(idx % g) / static_cast<double>(g);
    meas[idx] = measure_products(settings, with_signal_phases(base, phi1, phi2), products);
  });

  res.theta.assign(products.size(), 0.0);
  res.max_residual.assign(products.size(), 0.0);
  for (std::size_t idx = 0; idx < g * g; ++idx) {
    const double phi1 = kTwoPi * static_cast<double>(idx / g) / static_cast<double>(g);
    const double phi2 = kTwoPi * static_cast<double>(idx % g) / static_cast<double>(g);
    const double phases[2] = {phi1, phi2};
    for (std::size_t j = 0; j < products.size(); ++j) {
      double expected = 0.0;
      for (std::size_t i = 0; i < 2; ++i) expected += oriented[j].signal[i] * phases[i];
      // Remaining signals keep their base phases.
      for (std::size_t i = 2; i < oriented[j].signal.size(); ++i) {
        expected += oriented[j].signal[i] * base.signals()[i].phase;
      }
      const double offset = wrap_phase(meas[idx][j].phase - expected);
      if (idx == 0) res.theta[j] = offset;
      const double resid = phase_distance(offset, res.theta[j]);
      res.max_residual[j] = std::max(res.max_residual[j], resid);
      res.rows.push_back({phi1, phi2, j, meas[idx][j].phase, resid});
    }
  }
  return res;
}

double oracle_single_tone_gain_db(const OracleSettings& settings, Frequency f, PowerDbm input) {
  const Tone tone(f, input, 0.0);
  const auto in = synthesize_trace(std::span<const Tone>(&tone, 1), settings.trace);
  const auto out = apply_nonlinearity(in, settings.model, settings.quintic_per_v4);
  const auto est = extract_tones(out, std::span<const Frequency>(&f, 1), settings.trace.window,
                                 settings.trace.z0_ohm);
  return est[0].power.dbm - input.dbm;
}

std::vector<SaturationPoint> single_tone_saturation(const OracleSettings& settings, Frequency f,
                                                    double start_dbm, double stop_dbm,
                                                    int points) {
  if (points < 2) throw std::invalid_argument("a saturation sweep needs at least two points");
  std::vector<SaturationPoint> out(static_cast<std::size_t>(points));
  parallel_for(out.size(), [&](std::size_t k) {
    const double p = start_dbm + (stop_dbm - start_dbm) * static_cast<double>(k) /
                                     static_cast<double>(points - 1);
    out[k].input_dbm = p;
    out[k].oracle_gain_db = oracle_single_tone_gain_db(settings, f, PowerDbm{p});
    out[k].model_gain_db = saturation_gain_db(settings.model, PowerDbm{p});
  });
  return out;
}

PowerDbm oracle_compression_point(const OracleSettings& settings, Frequency f) {
  double lo = -150.0;
  double small_signal = oracle_single_tone_gain_db(settings, f, PowerDbm{lo});
  // Move the reference down until it is genuinely small-signal.
  for (int guard = 0; guard < 20; ++guard) {
    const double lower = oracle_single_tone_gain_db(settings, f, PowerDbm{lo - 30.0});
    if (std::abs(lower - small_signal) < 1e-6) break;
    lo -= 30.0;
    small_signal = lower;
  }
  const double target = small_signal - 1.0;
  double hi = lo;
  for (int guard = 0;; ++guard) {
    if (guard > 200) throw std::runtime_error("oracle gain never compressed by 1 dB");
    hi += 3.0;
    if (oracle_single_tone_gain_db(settings, f, PowerDbm{hi}) <= target) break;
    lo = hi;
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (oracle_single_tone_gain_db(settings, f, PowerDbm{mid}) <= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return PowerDbm{0.5 * (lo + hi)};
}

PowerDbm oracle_ip3_point(const OracleSettings& settings, Frequency f1, Frequency f2,
                          PowerDbm probe) {
  const Tone tones[2] = {Tone(f1, probe, 0.0), Tone(f2, probe, 0.0)};
  const auto in = synthesize_trace(tones, settings.trace);
  const auto out = apply_nonlinearity(in, settings.model, settings.quintic_per_v4);
  const Frequency im3 = Frequency::hz(std::abs(2.0 * f1.hz() - f2.hz()));
  const Frequency read[2] = {f1, im3};
  const auto est = extract_tones(out, read, settings.trace.window, settings.trace.z0_ohm);
  return PowerDbm{probe.dbm + 0.5 * (est[0].power.dbm - est[1].power.dbm)};
}

AmplifierModel calibrate_from_measurement(const AmplifierModel& base, const ToneSet& tones,
                                          std::span<const ProductMeasurement> measured,
                                          double gain_db) {
  AmplifierModel out = base;
  out.gain_db = gain_db;
  const auto powers = tones.signal_powers_dbm();
  const auto phases = tones.signal_phases();
  const auto freqs = tones.signal_freqs_hz();
  const double pump_hz = tones.pump().freq.hz();
  for (const auto& m : measured) {
    const Coefficients key = m.coeffs.canonical();
    const Coefficients oriented = positive_frequency_orientation(m.coeffs, pump_hz, freqs);
    double expected_phase = 0.0;
    for (std::size_t i = 0; i < oriented.signal.size(); ++i) {
      expected_phase += oriented.signal[i] * phases[i];
    }
    out.theta_rad[key] = wrap_phase(m.phase - expected_phase);

    const int os = m.coeffs.signal_order();
    if (os < 2) continue;
    double sum = 0.0;
    for (std::size_t i = 0; i < m.coeffs.signal.size(); ++i) {
      sum += std::abs(m.coeffs.signal[i]) * powers[i];
    }
    out.p_ip_override_dbm[key] = (m.power.dbm - gain_db - sum) / static_cast<double>(1 - os);
  }
  return out;
}

}  // namespace imdplan::oracle
