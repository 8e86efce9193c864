#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "imdplan/amplifier.hpp"
#include "imdplan/products.hpp"

namespace imdplan::oracle {

enum class Window { none, blackman_harris_4term };

/// Sampling grid for simulated traces. Defaults to 1.8 GS/s and 4095 samples (2.275 us).
struct TraceConfig {
  double sample_rate_hz = 1.8e9;
  std::size_t samples = 4095;
  Window window = Window::blackman_harris_4term;
  double z0_ohm = kDefaultImpedanceOhm;

  static TraceConfig from_duration(double sample_rate_hz, double duration_s,
                                   Window window = Window::blackman_harris_4term);

  double duration_s() const { return static_cast<double>(samples) / sample_rate_hz; }
  double nyquist_hz() const { return 0.5 * sample_rate_hz; }
  double bin_spacing_hz() const { return sample_rate_hz / static_cast<double>(samples); }
  /// Frequency of DFT bin `bin`; tones placed on bins do not leak past +-3 bins
  /// under the periodic 4-term window.
  Frequency bin_frequency(int bin) const;

  void validate() const;

  bool operator==(const TraceConfig&) const = default;
};

/// Sampled voltages. Real passband traces leave `quadrature` empty; complex traces
/// hold the analytic signal as (samples + i quadrature).
struct TimeTrace {
  double sample_rate_hz = 0.0;
  std::vector<double> samples;
  std::vector<double> quadrature;

  bool is_complex() const { return !quadrature.empty(); }
  std::size_t size() const { return samples.size(); }
  double duration_s() const { return static_cast<double>(samples.size()) / sample_rate_hz; }
  void validate() const;
};

/// Sum of A_i cos(2 pi f_i t + phi_i) with A_i = sqrt(2 p_i z0) plus seeded white
/// Gaussian noise of standard deviation `noise_std_v`. Throws on Nyquist violation.
TimeTrace synthesize_trace(std::span<const Tone> tones, const TraceConfig& cfg,
                           double noise_std_v = 0.0, std::uint64_t seed = 0);

/// Sample-wise y = sqrt(G) (x - k x^3 + k5 x^5) on a real trace.
TimeTrace apply_nonlinearity(const TimeTrace& trace, const AmplifierModel& model,
                             double quintic_per_v4 = 0.0);

}  // namespace imdplan::oracle
