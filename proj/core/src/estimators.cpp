#include "imdplan/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace imdplan::oracle {

std::complex<double> integrated_amplitude(const TimeTrace& trace, Frequency freq,
                                          std::span<const double> weights, double z0) {
  trace.validate();
  if (!weights.empty() && weights.size() != trace.size()) {
    throw std::invalid_argument("integration weights must match the trace length");
  }
  const double cycles_per_sample = freq.hz() / trace.sample_rate_hz;
  std::complex<double> acc{0.0, 0.0};
  double wsum = 0.0;
  for (std::size_t n = 0; n < trace.size(); ++n) {
    const double w = weights.empty() ? 1.0 : weights[n];
    const double cycles = cycles_per_sample * static_cast<double>(n);
    const double arg = -kTwoPi * (cycles - std::floor(cycles));
    const std::complex<double> x{trace.samples[n], trace.is_complex() ? trace.quadrature[n] : 0.0};
    acc += w * x * std::polar(1.0, arg);
    wsum += w;
  }
  if (wsum == 0.0) throw std::invalid_argument("integration weights sum to zero");
  // Peak voltage phasor, then to sqrt(W): |A|^2 = V^2 / (2 z0).
  const double real_factor = trace.is_complex() ? 1.0 : 2.0;
  return acc * (real_factor / wsum) / std::sqrt(2.0 * z0);
}

GainNoiseEstimate gain_noise_from_amplitudes(std::span<const std::complex<double>> amplitudes,
                                             PowerDbm applied) {
  if (amplitudes.size() < 2) {
    throw std::invalid_argument("gain/noise estimation needs at least two shots");
  }
  // Moments are taken about the first shot so identical shots give exactly zero noise.
  const std::complex<double> origin = amplitudes.front();
  std::complex<double> mean_d{0.0, 0.0};
  double mean_sq = 0.0;
  for (const auto& a : amplitudes) {
    const auto d = a - origin;
    mean_d += d;
    mean_sq += std::norm(d);
  }
  const double m = static_cast<double>(amplitudes.size());
  mean_d /= m;
  mean_sq /= m;
  GainNoiseEstimate est;
  est.gain = std::norm(origin + mean_d) / applied.watts();
  est.noise_w = std::max(0.0, mean_sq - std::norm(mean_d));
  est.shots = amplitudes.size();
  return est;
}

GainNoiseEstimate estimate_gain_noise(std::span<const TimeTrace> shots, Frequency freq,
                                      PowerDbm applied, std::span<const double> weights,
                                      double z0) {
  if (shots.size() < 2) {
    throw std::invalid_argument("gain/noise estimation needs at least two shots");
  }
  std::vector<std::complex<double>> amps;
  amps.reserve(shots.size());
  for (const auto& s : shots) amps.push_back(integrated_amplitude(s, freq, weights, z0));
  return gain_noise_from_amplitudes(amps, applied);
}

double efficiency_change_db(const GainNoiseEstimate& current, const GainNoiseEstimate& ref) {
  if (!(ref.gain > 0.0) || !(ref.noise_w > 0.0)) {
    throw std::invalid_argument("reference gain and noise must be positive");
  }
  return 10.0 * std::log10(current.gain / ref.gain) -
         10.0 * std::log10(current.noise_w / ref.noise_w);
}

double first_crossing(std::span<const double> xs, std::span<const double> ys, double level) {
  if (xs.size() != ys.size()) throw std::invalid_argument("x and y lengths differ");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (ys[i - 1] > level && ys[i] <= level) {
      const double t = (ys[i - 1] - level) / (ys[i - 1] - ys[i]);
      return xs[i - 1] + t * (xs[i] - xs[i - 1]);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace imdplan::oracle
