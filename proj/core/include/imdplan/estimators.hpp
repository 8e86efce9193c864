#pragma once

#include <complex>
#include <span>
#include <vector>

#include "imdplan/trace.hpp"

namespace imdplan::oracle {

/// Gain G = |<A>|^2 / p and noise S = <|A|^2> - |<A>|^2 from repeated shots.
struct GainNoiseEstimate {
  double gain = 0.0;     // linear power ratio
  double noise_w = 0.0;  // watts
  std::size_t shots = 0;
};

/// Weighted integral of the trace down-converted from `freq`, scaled so that
/// |A|^2 is the tone power in watts. Empty weights means a boxcar.
std::complex<double> integrated_amplitude(const TimeTrace& trace, Frequency freq,
                                          std::span<const double> weights = {},
                                          double z0 = kDefaultImpedanceOhm);

GainNoiseEstimate gain_noise_from_amplitudes(std::span<const std::complex<double>> amplitudes,
                                             PowerDbm applied);

/// Requires at least two shots.
GainNoiseEstimate estimate_gain_noise(std::span<const TimeTrace> shots, Frequency freq,
                                      PowerDbm applied, std::span<const double> weights = {},
                                      double z0 = kDefaultImpedanceOhm);

/// 10 log10(G / G_ref) - 10 log10(S / S_ref), in dB.
double efficiency_change_db(const GainNoiseEstimate& current, const GainNoiseEstimate& ref);

/// First x where the piecewise-linear curve y(x) crosses `level` going downward,
/// e.g. the input power of 1 dB efficiency loss. Returns NaN when never crossed.
double first_crossing(std::span<const double> xs, std::span<const double> ys, double level);

}  // namespace imdplan::oracle
