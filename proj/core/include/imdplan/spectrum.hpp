#pragma once

#include <complex>
#include <span>
#include <vector>

#include "imdplan/trace.hpp"

namespace imdplan::oracle {

/// Minimum 4-term Blackman-Harris coefficients (about -92 dB sidelobes).
inline constexpr double kBh4A0 = 0.35875;
inline constexpr double kBh4A1 = 0.48829;
inline constexpr double kBh4A2 = 0.14128;
inline constexpr double kBh4A3 = 0.01168;

/// Periodic (DFT-even) window of length n.
std::vector<double> window_coefficients(Window window, std::size_t n);

struct ToneEstimate {
  Frequency freq;
  PowerDbm power;
  double phase = 0.0;
  /// False when another requested frequency lies within 2 / duration.
  bool resolvable = true;
};

/// Windowed projection sum_n w[n] x[n] exp(-2 pi i f t_n) at an exact frequency.
std::complex<double> project(const TimeTrace& trace, std::span<const double> window,
                             Frequency freq);

/// Power and phase of each requested frequency, projected at the exact frequency and
/// corrected for the window's coherent gain. A zero trace reports the -300 dBm floor.
std::vector<ToneEstimate> extract_tones(const TimeTrace& trace, std::span<const Frequency> freqs,
                                        Window window, double z0 = kDefaultImpedanceOhm);

/// Full N-point DFT of the windowed trace.
std::vector<std::complex<double>> windowed_dft(const TimeTrace& trace, Window window);

struct SpectrumLine {
  Frequency freq;
  PowerDbm power;
  double phase = 0.0;
};

/// One-sided bin spectrum (bins 0..N/2) with coherent-gain correction, for export.
std::vector<SpectrumLine> one_sided_spectrum(const TimeTrace& trace, Window window,
                                             double z0 = kDefaultImpedanceOhm);

}  // namespace imdplan::oracle
