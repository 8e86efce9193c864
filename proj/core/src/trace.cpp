#include "imdplan/trace.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "imdplan/parallel.hpp"

namespace imdplan::oracle {

TraceConfig TraceConfig::from_duration(double sample_rate_hz, double duration_s, Window window) {
  TraceConfig cfg;
  cfg.sample_rate_hz = sample_rate_hz;
  cfg.samples = static_cast<std::size_t>(std::llround(sample_rate_hz * duration_s));
  cfg.window = window;
  cfg.validate();
  return cfg;
}

Frequency TraceConfig::bin_frequency(int bin) const {
  return Frequency::hz(bin * bin_spacing_hz());
}

void TraceConfig::validate() const {
  if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz)) {
    throw std::invalid_argument("sample rate must be positive");
  }
  if (samples < 16) {
    throw std::invalid_argument("a trace needs at least 16 samples");
  }
  if (!(z0_ohm > 0.0)) {
    throw std::invalid_argument("z0 must be positive");
  }
}

void TimeTrace::validate() const {
  if (!(sample_rate_hz > 0.0)) throw std::invalid_argument("trace sample rate must be positive");
  if (!quadrature.empty() && quadrature.size() != samples.size()) {
    throw std::invalid_argument("I and Q sample counts differ");
  }
  for (double v : samples) {
    if (!std::isfinite(v)) throw std::invalid_argument("trace contains non-finite samples");
  }
  for (double v : quadrature) {
    if (!std::isfinite(v)) throw std::invalid_argument("trace contains non-finite samples");
  }
}

TimeTrace synthesize_trace(std::span<const Tone> tones, const TraceConfig& cfg,
                           double noise_std_v, std::uint64_t seed) {
  cfg.validate();
  if (noise_std_v < 0.0) throw std::invalid_argument("noise standard deviation must be >= 0");
  for (const auto& t : tones) {
    if (std::abs(t.freq.hz()) >= cfg.nyquist_hz()) {
      throw std::invalid_argument("tone at " + std::to_string(t.freq.hz()) +
                                  " Hz violates Nyquist for sample rate " +
                                  std::to_string(cfg.sample_rate_hz) + " Hz");
    }
  }

  TimeTrace out;
  out.sample_rate_hz = cfg.sample_rate_hz;
  out.samples.assign(cfg.samples, 0.0);

  for (const auto& t : tones) {
    const double amp = amplitude_from_power(t.power, cfg.z0_ohm);
    const double cycles_per_sample = t.freq.hz() / cfg.sample_rate_hz;
    for (std::size_t n = 0; n < cfg.samples; ++n) {
      // Reduce to a fractional cycle before scaling by 2pi to keep the argument small.
      const double cycles = cycles_per_sample * static_cast<double>(n);
      const double frac = cycles - std::floor(cycles);
      out.samples[n] += amp * std::cos(kTwoPi * frac + t.phase);
    }
  }

  if (noise_std_v > 0.0) {
    Rng rng(derive_seed(seed, 0));
    std::normal_distribution<double> gauss(0.0, noise_std_v);
    for (double& v : out.samples) v += gauss(rng);
  }
  return out;
}

TimeTrace apply_nonlinearity(const TimeTrace& trace, const AmplifierModel& model,
                             double quintic_per_v4) {
  if (trace.is_complex()) {
    throw std::invalid_argument("the memoryless nonlinearity acts on real passband traces");
  }
  const double scale = std::sqrt(model.gain_linear());
  const double k = model.k_per_v2;
  TimeTrace out;
  out.sample_rate_hz = trace.sample_rate_hz;
  out.samples.resize(trace.samples.size());
  for (std::size_t n = 0; n < trace.samples.size(); ++n) {
    const double x = trace.samples[n];
    const double x2 = x * x;
    out.samples[n] = scale * x * (1.0 - k * x2 + quintic_per_v4 * x2 * x2);
  }
  return out;
}

}  // namespace imdplan::oracle
